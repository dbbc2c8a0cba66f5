//! Line-oriented text formats: instances, solutions, bin packing inputs and
//! reduction sidecars. Printing is deterministic (declaration order).

use std::collections::HashMap;
use std::fmt::Write as _;

use starpart::weighted::BinPackingInstance;
use starpart::{Graph, GraphBuilder, GraphKind, NodeId, Objective, PartialColoring};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Non-empty, comment-stripped lines with their 1-based numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let words: Vec<&str> = l.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn number<T: std::str::FromStr>(line: usize, what: &str, s: &str) -> Result<T, ParseError> {
    s.parse()
        .or_else(|_| err(line, format!("{what} must be a non-negative integer, got `{s}`")))
}

/// A graph plus the node names used in its file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub names: Vec<String>,
}

impl Instance {
    /// Names `v1, v2, ...`.
    pub fn with_default_names(graph: Graph) -> Self {
        let names = (1..=graph.node_count()).map(|i| format!("v{i}")).collect();
        Instance { graph, names }
    }

    pub fn name(&self, v: NodeId) -> &str {
        &self.names[v.0]
    }

    pub fn node_index(&self) -> HashMap<&str, NodeId> {
        self.names.iter().enumerate().map(|(i, s)| (s.as_str(), NodeId(i))).collect()
    }
}

/// Raw file contents before graph validation.
struct RawInstance {
    kind: GraphKind,
    names: Vec<String>,
    caps: Vec<Option<usize>>,
    weights: Vec<u64>,
    edges: Vec<Vec<usize>>,
}

fn parse_raw(text: &str) -> Result<RawInstance, ParseError> {
    let mut kind = None;
    let mut raw = RawInstance {
        kind: GraphKind::Simple,
        names: Vec::new(),
        caps: Vec::new(),
        weights: Vec::new(),
        edges: Vec::new(),
    };
    let mut index: HashMap<String, usize> = HashMap::new();
    for (ln, words) in lines(text) {
        match words[0] {
            "kind" => {
                if kind.is_some() {
                    return err(ln, "duplicate `kind` line");
                }
                let [_, word] = words[..] else {
                    return err(ln, "expected `kind simple|multi|selfloop|hyper`");
                };
                kind = Some(GraphKind::from_keyword(word).ok_or_else(|| ParseError {
                    line: ln,
                    message: format!("unknown graph kind `{word}`"),
                })?);
            }
            "node" => {
                if kind.is_none() {
                    return err(ln, "`kind` must come first");
                }
                let Some(&name) = words.get(1) else {
                    return err(ln, "node needs a name");
                };
                if index.insert(name.to_string(), raw.names.len()).is_some() {
                    return err(ln, format!("duplicate node name `{name}`"));
                }
                let (mut cap, mut w) = (None, 1);
                for attr in &words[2..] {
                    match attr.split_once('=') {
                        Some(("cap", v)) => cap = Some(number(ln, "cap", v)?),
                        Some(("w", v)) => w = number(ln, "w", v)?,
                        _ => return err(ln, format!("unknown node attribute `{attr}`")),
                    }
                }
                raw.names.push(name.to_string());
                raw.caps.push(cap);
                raw.weights.push(w);
            }
            "edge" => {
                if kind.is_none() {
                    return err(ln, "`kind` must come first");
                }
                let mut edge = Vec::with_capacity(words.len() - 1);
                for name in &words[1..] {
                    match index.get(*name) {
                        Some(&v) => edge.push(v),
                        None => return err(ln, format!("unknown node `{name}`")),
                    }
                }
                if edge.is_empty() {
                    return err(ln, "edge needs at least one endpoint");
                }
                raw.edges.push(edge);
            }
            other => return err(ln, format!("unknown directive `{other}`")),
        }
    }
    raw.kind = kind.ok_or(ParseError {
        line: 0,
        message: "missing `kind` line".into(),
    })?;
    Ok(raw)
}

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid graph: {0}")]
    Graph(#[from] starpart::GraphError),
    #[error("invalid graph: edges {first} ({first_nodes}) and {second} ({second_nodes}) share more than one node, so the hypergraph is not linear")]
    NonLinear {
        first: usize,
        second: usize,
        first_nodes: String,
        second_nodes: String,
    },
}

pub fn parse_instance(text: &str) -> Result<Instance, InstanceError> {
    let raw = parse_raw(text)?;
    let mut b = GraphBuilder::new(raw.kind, raw.names.len());
    for (v, cap) in raw.caps.iter().enumerate() {
        if let Some(c) = cap {
            b.capacity(v, *c);
        }
    }
    b.weights(raw.weights.iter().copied()).edges(raw.edges.iter().cloned());
    let graph = b.build().map_err(|e| match e {
        starpart::GraphError::NonLinearHypergraph { first, second } => {
            let nodes = |e: usize| raw.edges[e].iter().map(|&v| raw.names[v].as_str()).collect::<Vec<_>>().join(" ");
            InstanceError::NonLinear {
                first,
                second,
                first_nodes: nodes(first),
                second_nodes: nodes(second),
            }
        }
        e => InstanceError::Graph(e),
    })?;
    Ok(Instance {
        graph,
        names: raw.names,
    })
}

/// Capacities equal to the default (maximum degree) and unit weights are omitted.
pub fn print_instance(inst: &Instance) -> String {
    let g = &inst.graph;
    let mut out = format!("kind {}\n", g.kind());
    let default_cap = g.max_degree();
    for v in g.nodes() {
        write!(out, "node {}", inst.name(v)).unwrap();
        if g.capacity(v) != default_cap {
            write!(out, " cap={}", g.capacity(v)).unwrap();
        }
        if g.weight(v) != 1 {
            write!(out, " w={}", g.weight(v)).unwrap();
        }
        out.push('\n');
    }
    for e in g.edges() {
        out.push_str("edge");
        for &v in e {
            write!(out, " {}", inst.name(v)).unwrap();
        }
        out.push('\n');
    }
    out
}

/// Owners by edge index and the claimed value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub owners: Vec<Option<String>>,
    pub value: Option<Objective>,
}

impl Solution {
    /// An infeasible solution lists no owners.
    pub fn from_coloring(inst: &Instance, c: &PartialColoring, value: Objective) -> Self {
        if value == Objective::Infeasible {
            return Solution {
                owners: Vec::new(),
                value: Some(value),
            };
        }
        Solution {
            owners: c.owners().iter().map(|o| o.map(|v| inst.name(v).to_string())).collect(),
            value: Some(value),
        }
    }

    /// Resolves names against `inst`. Missing owners stay `None`.
    pub fn to_coloring(&self, inst: &Instance) -> Result<PartialColoring, String> {
        let m = inst.graph.edge_count();
        if self.owners.len() > m {
            return Err(format!(
                "solution names edge {} but the instance has {m} edges",
                self.owners.len() - 1
            ));
        }
        let index = inst.node_index();
        let mut owners = vec![None; m];
        for (e, name) in self.owners.iter().enumerate() {
            if let Some(name) = name {
                let v = *index.get(name.as_str()).ok_or_else(|| format!("unknown node `{name}` for edge {e}"))?;
                owners[e] = Some(v);
            }
        }
        Ok(PartialColoring::from_owners(owners))
    }
}

pub fn parse_solution(text: &str) -> Result<Solution, ParseError> {
    let mut owners: Vec<Option<String>> = Vec::new();
    let mut value = None;
    for (ln, words) in lines(text) {
        match words[..] {
            ["owner", idx, name] => {
                let idx: usize = number(ln, "edge index", idx)?;
                if idx >= owners.len() {
                    owners.resize(idx + 1, None);
                }
                if owners[idx].is_some() {
                    return err(ln, format!("edge {idx} listed twice"));
                }
                owners[idx] = Some(name.to_string());
            }
            ["value", "INFEASIBLE"] => value = Some(Objective::Infeasible),
            ["value", v] => value = Some(Objective::Finite(number(ln, "value", v)?)),
            _ => return err(ln, "expected `owner <edge> <node>` or `value <int|INFEASIBLE>`"),
        }
    }
    Ok(Solution { owners, value })
}

pub fn print_value(value: Objective) -> String {
    match value {
        Objective::Finite(x) => format!("value {x}"),
        Objective::Infeasible => "value INFEASIBLE".to_string(),
    }
}

pub fn print_solution(sol: &Solution) -> String {
    let mut out = String::new();
    for (e, owner) in sol.owners.iter().enumerate() {
        if let Some(name) = owner {
            writeln!(out, "owner {e} {name}").unwrap();
        }
    }
    if let Some(v) = sol.value {
        writeln!(out, "{}", print_value(v)).unwrap();
    }
    out
}

/// `bins K c` followed by `item <size>` lines.
pub fn parse_binpack(text: &str) -> Result<BinPackingInstance, ParseError> {
    let mut bins = None;
    let mut sizes = Vec::new();
    let mut last = 0;
    for (ln, words) in lines(text) {
        last = ln;
        match words[..] {
            ["bins", k, c] => {
                if bins.is_some() {
                    return err(ln, "duplicate `bins` line");
                }
                bins = Some((number(ln, "bin count", k)?, number(ln, "bin capacity", c)?));
            }
            ["item", s] => sizes.push(number(ln, "item size", s)?),
            _ => return err(ln, "expected `bins <K> <c>` or `item <size>`"),
        }
    }
    let Some((k, c)) = bins else {
        return err(last, "missing `bins <K> <c>` line");
    };
    BinPackingInstance::new(sizes, k, c).or_else(|e| err(last, e.to_string()))
}

pub fn print_binpack(bp: &BinPackingInstance) -> String {
    let mut out = format!("bins {} {}\n", bp.bins, bp.capacity);
    for s in &bp.sizes {
        writeln!(out, "item {s}").unwrap();
    }
    out
}

/// Which reduction produced a file, and what is needed to map solutions back.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionKind {
    Ind2Star,
    Wind2Wstar,
    Bp2Wind,
}

impl ReductionKind {
    pub fn keyword(self) -> &'static str {
        match self {
            ReductionKind::Ind2Star => "ind2star",
            ReductionKind::Wind2Wstar => "wind2wstar",
            ReductionKind::Bp2Wind => "bp2wind",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        match word {
            "ind2star" => Some(ReductionKind::Ind2Star),
            "wind2wstar" => Some(ReductionKind::Wind2Wstar),
            "bp2wind" => Some(ReductionKind::Bp2Wind),
            _ => None,
        }
    }
}

/// Contents of the `.map` file written next to a reduced instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sidecar {
    pub kind: ReductionKind,
    pub original_nodes: usize,
    pub original_edges: usize,
    /// Indegree bound `k` for `wind2wstar`.
    pub k: Option<u64>,
    /// Objective bound on the reduced instance that matches a YES answer:
    /// `M + k` for `wind2wstar` and `c·(K−1)` for `bp2wind`.
    pub threshold: Option<u64>,
}

pub fn print_sidecar(s: &Sidecar) -> String {
    let mut out = format!(
        "reduction {}\noriginal_nodes {}\noriginal_edges {}\n",
        s.kind.keyword(),
        s.original_nodes,
        s.original_edges
    );
    if let Some(k) = s.k {
        writeln!(out, "k {k}").unwrap();
    }
    if let Some(t) = s.threshold {
        writeln!(out, "threshold {t}").unwrap();
    }
    out
}

pub fn parse_sidecar(text: &str) -> Result<Sidecar, ParseError> {
    let (mut kind, mut nodes, mut edges, mut k, mut threshold) = (None, None, None, None, None);
    let mut last = 0;
    for (ln, words) in lines(text) {
        last = ln;
        match words[..] {
            ["reduction", word] => {
                kind = Some(ReductionKind::from_keyword(word).ok_or_else(|| ParseError {
                    line: ln,
                    message: format!("unknown reduction `{word}`"),
                })?)
            }
            ["original_nodes", v] => nodes = Some(number(ln, "original_nodes", v)?),
            ["original_edges", v] => edges = Some(number(ln, "original_edges", v)?),
            ["k", v] => k = Some(number(ln, "k", v)?),
            ["threshold", v] => threshold = Some(number(ln, "threshold", v)?),
            _ => return err(ln, "unknown sidecar line"),
        }
    }
    match (kind, nodes, edges) {
        (Some(kind), Some(original_nodes), Some(original_edges)) => Ok(Sidecar {
            kind,
            original_nodes,
            original_edges,
            k,
            threshold,
        }),
        _ => err(last, "sidecar needs `reduction`, `original_nodes` and `original_edges`"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIANGLE: &str = "# a triangle\nkind simple\nnode a\nnode b cap=1 w=4\nnode c\nedge a b\nedge b c  # trailing\nedge a c\n";

    #[test]
    fn instance_round_trip() {
        let inst = parse_instance(TRIANGLE).unwrap();
        assert_eq!(inst.graph.capacities(), &[2, 1, 2]);
        assert_eq!(inst.graph.weights(), &[1, 4, 1]);
        let printed = print_instance(&inst);
        assert_eq!(printed, "kind simple\nnode a\nnode b cap=1 w=4\nnode c\nedge a b\nedge b c\nedge a c\n");
        assert_eq!(parse_instance(&printed).unwrap(), inst);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse_instance("kind simple\nnode a\nedge a z\n").unwrap_err();
        assert_eq!(e.to_string(), "line 3: unknown node `z`");
        let e = parse_instance("kind simple\nnode a\nnode a\n").unwrap_err();
        assert!(e.to_string().starts_with("line 3:"));
        assert!(parse_instance("node a\n").is_err());
        assert!(parse_instance("kind weird\n").is_err());
        assert!(parse_instance("kind simple\nnode a cap=x\n").is_err());
    }

    #[test]
    fn non_linear_error_names_both_edges() {
        let e = parse_instance("kind hyper\nnode a\nnode b\nnode c\nedge a b c\nedge c b\n").unwrap_err();
        assert!(e.to_string().contains("edges 0 (a b c) and 1 (c b)"), "{e}");
    }

    #[test]
    fn self_loops_print_with_one_endpoint() {
        let inst = parse_instance("kind selfloop\nnode a\nnode b\nedge a a\nedge a b\n").unwrap();
        assert_eq!(print_instance(&inst), "kind selfloop\nnode a\nnode b\nedge a\nedge a b\n");
    }

    #[test]
    fn solution_round_trip() {
        let text = "owner 0 a\nowner 2 c\nowner 1 c\nvalue 2\n";
        let sol = parse_solution(text).unwrap();
        assert_eq!(sol.value, Some(Objective::Finite(2)));
        assert_eq!(print_solution(&sol), "owner 0 a\nowner 1 c\nowner 2 c\nvalue 2\n");
        assert!(parse_solution("owner 0 a\nowner 0 b\n").is_err());
        let inf = parse_solution("value INFEASIBLE\n").unwrap();
        assert_eq!(inf.value, Some(Objective::Infeasible));
    }

    #[test]
    fn binpack_and_sidecar_round_trip() {
        let bp = parse_binpack("bins 3 10\nitem 1\nitem 9\n").unwrap();
        assert_eq!(parse_binpack(&print_binpack(&bp)).unwrap(), bp);
        assert!(parse_binpack("bins 1 10\nitem 1\n").is_err());
        let s = Sidecar {
            kind: ReductionKind::Wind2Wstar,
            original_nodes: 3,
            original_edges: 2,
            k: Some(4),
            threshold: Some(14),
        };
        assert_eq!(parse_sidecar(&print_sidecar(&s)).unwrap(), s);
    }
}
