//! Implication graphs of 2-CNF encodings and the structural diagnostics that
//! drive the 2-CNF lower bound.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::bounds::lower_bound_2cnf;
use crate::cnf::{Clause, Encoding, Formula, Lit, Var};
use crate::encodings::ceil_sqrt;
use crate::regular::{check_regular, PSet, StructureError};
use crate::semantics::Limits;

/// Directed graph on literals with arcs `¬g → h` and `¬h → g` for every
/// binary clause `g ∨ h`, and `¬g → g` for a unit clause `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicationGraph {
    num_vars: usize,
    successors: Vec<Vec<Lit>>,
    arc_count: usize,
}

impl ImplicationGraph {
    pub fn new(formula: &Formula) -> Result<ImplicationGraph, StructureError> {
        Self::with_vars(formula, formula.max_var().map_or(0, |v| v.index()))
    }

    pub fn with_vars(formula: &Formula, num_vars: usize) -> Result<ImplicationGraph, StructureError> {
        let mut successors = vec![Vec::new(); 2 * (num_vars + 1)];
        let mut arc_count = 0;
        for clause in formula.iter() {
            match *clause.lits() {
                [g] => {
                    successors[(!g).code()].push(g);
                    arc_count += 1;
                }
                [g, h] => {
                    successors[(!g).code()].push(h);
                    successors[(!h).code()].push(g);
                    arc_count += 2;
                }
                _ => return Err(StructureError::NotTwoCnf(clause.clone())),
            }
        }
        for s in &mut successors {
            s.sort_unstable();
        }
        Ok(ImplicationGraph {
            num_vars,
            successors,
            arc_count,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn successors(&self, lit: Lit) -> &[Lit] {
        self.successors.get(lit.code()).map_or(&[], Vec::as_slice)
    }

    pub fn has_arc(&self, from: Lit, to: Lit) -> bool {
        self.successors(from).binary_search(&to).is_ok()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (Lit, Lit)> + '_ {
        self.literals()
            .flat_map(move |g| self.successors(g).iter().map(move |&h| (g, h)))
    }

    fn literals(&self) -> impl Iterator<Item = Lit> {
        (1..=self.num_vars as u32).flat_map(|v| [Var::new(v).pos(), Var::new(v).neg()])
    }

    /// Arc `(g, h)` is present iff `(¬h, ¬g)` is.
    pub fn is_skew_symmetric(&self) -> bool {
        self.arcs().all(|(g, h)| self.has_arc(!h, !g))
    }

    /// Literals reachable from `from` by a path of length at least zero.
    pub fn reachable(&self, from: Lit) -> BTreeSet<Lit> {
        let mut seen = BTreeSet::from([from]);
        let mut queue = VecDeque::from([from]);
        while let Some(g) = queue.pop_front() {
            for &h in self.successors(g) {
                if seen.insert(h) {
                    queue.push_back(h);
                }
            }
        }
        seen
    }

    pub fn path_exists(&self, from: Lit, to: Lit) -> bool {
        self.shortest_path(from, to, |_| true).is_some()
    }

    /// Shortest path from `from` to `to` whose interior vertices all satisfy
    /// `interior`. The endpoints are included.
    pub fn shortest_path(&self, from: Lit, to: Lit, interior: impl Fn(Lit) -> bool) -> Option<Vec<Lit>> {
        if from == to {
            return Some(vec![from]);
        }
        let mut parent: BTreeMap<Lit, Lit> = BTreeMap::new();
        let mut queue = VecDeque::from([from]);
        while let Some(g) = queue.pop_front() {
            for &h in self.successors(g) {
                if h == from || parent.contains_key(&h) {
                    continue;
                }
                if h == to {
                    let mut path = vec![to, g];
                    let mut cur = g;
                    while cur != from {
                        cur = parent[&cur];
                        path.push(cur);
                    }
                    path.reverse();
                    return Some(path);
                }
                if interior(h) {
                    parent.insert(h, g);
                    queue.push_back(h);
                }
            }
        }
        None
    }
}

/// Implication graph of a 2-CNF encoding together with the auxiliary-only
/// clause graph and, in regular form, the graph whose edges are the `PB_i`.
#[derive(Debug, Clone)]
pub struct EncodingGraph {
    pub graph: ImplicationGraph,
    /// Connected components of the graph on auxiliaries whose edges are the
    /// clauses mentioning only auxiliaries.
    pub components: Vec<Vec<Var>>,
    pub auxiliary_clauses: usize,
    pub pb_graph: Option<PbGraph>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PbGraph {
    pub vertices: Vec<Var>,
    /// One edge per input, in input order.
    pub edges: Vec<(Var, Var)>,
}

impl PbGraph {
    fn from_p_sets(p_sets: &[PSet]) -> PbGraph {
        let edges: Vec<(Var, Var)> = p_sets
            .iter()
            .map(|p| match p.pb[..] {
                [a, b] => (a, b),
                [a] => (a, a),
                _ => unreachable!("partner sets have one or two variables"),
            })
            .collect();
        let vertices: BTreeSet<Var> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        PbGraph {
            vertices: vertices.into_iter().collect(),
            edges,
        }
    }

    /// Input triples `(r, s, t)`, 1-based and increasing, whose edges form a
    /// triangle.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut by_pair: BTreeMap<(Var, Var), Vec<usize>> = BTreeMap::new();
        let mut adjacent: BTreeMap<Var, BTreeSet<Var>> = BTreeMap::new();
        for (k, &(a, b)) in self.edges.iter().enumerate() {
            if a == b {
                continue;
            }
            by_pair.entry((a, b)).or_default().push(k + 1);
            adjacent.entry(a).or_default().insert(b);
            adjacent.entry(b).or_default().insert(a);
        }
        let mut found = Vec::new();
        for &(a, b) in by_pair.keys() {
            for &c in adjacent[&a].intersection(&adjacent[&b]) {
                if c <= b {
                    continue;
                }
                for &r in &by_pair[&(a, b)] {
                    for &s in &by_pair[&(a, c)] {
                        for &t in &by_pair[&(b, c)] {
                            let mut triple = [r, s, t];
                            triple.sort_unstable();
                            found.push(triple);
                        }
                    }
                }
            }
        }
        found.sort_unstable();
        found
    }
}

fn auxiliary_components(enc: &Encoding) -> (Vec<Vec<Var>>, usize) {
    let aux: Vec<Var> = enc.auxiliaries().iter().copied().collect();
    let index: BTreeMap<Var, usize> = aux.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let mut root: Vec<usize> = (0..aux.len()).collect();
    fn find(root: &mut [usize], mut k: usize) -> usize {
        while root[k] != k {
            root[k] = root[root[k]];
            k = root[k];
        }
        k
    }
    let mut clauses = 0;
    for clause in enc.formula().iter() {
        if !clause.vars().all(|v| enc.is_auxiliary(v)) {
            continue;
        }
        clauses += 1;
        let vars: Vec<usize> = clause.vars().map(|v| index[&v]).collect();
        for w in vars.windows(2) {
            let (a, b) = (find(&mut root, w[0]), find(&mut root, w[1]));
            root[a.max(b)] = a.min(b);
        }
    }
    let mut groups: BTreeMap<usize, Vec<Var>> = BTreeMap::new();
    for (k, &v) in aux.iter().enumerate() {
        let r = find(&mut root, k);
        groups.entry(r).or_default().push(v);
    }
    (groups.into_values().collect(), clauses)
}

/// Builds the graphs of a 2-CNF encoding. The partner-set graph is filled in
/// when the encoding is in regular form.
pub fn implication_graph(enc: &Encoding) -> Result<EncodingGraph, StructureError> {
    let graph = ImplicationGraph::with_vars(enc.formula(), enc.num_vars())?;
    let (components, auxiliary_clauses) = auxiliary_components(enc);
    let report = crate::regular::structure(enc);
    Ok(EncodingGraph {
        graph,
        components,
        auxiliary_clauses,
        pb_graph: report.p_sets.as_deref().map(PbGraph::from_p_sets),
    })
}

impl EncodingGraph {
    /// A path `x_i → ¬x_j` whose interior vertices are auxiliary literals.
    pub fn chain(&self, enc: &Encoding, i: usize, j: usize) -> Option<Vec<Lit>> {
        self.graph
            .shortest_path(enc.input(i).pos(), enc.input(j).neg(), |l| enc.is_auxiliary(l.var()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositiveOccurrence {
    pub input: usize,
    pub clause: Clause,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EqualPbPair {
    pub first: usize,
    pub second: usize,
    pub pb: Vec<Var>,
    /// The partner literals of the second input are the complements of those
    /// of the first.
    pub complementary: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MantelCheck {
    /// Auxiliaries carrying a partner-set edge.
    pub auxiliaries: usize,
    pub total_auxiliaries: usize,
    pub edges: usize,
    /// `2√n`.
    pub required: f64,
    /// `n ≤ v²/4` for `v` = [`MantelCheck::auxiliaries`].
    pub holds: bool,
    pub tight: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecurrenceBranch {
    /// Two inputs share a partner set: `size ≥ LB(n-2) + 7`.
    EqualPb,
    /// Three partner sets span three auxiliaries: `size ≥ LB(n-2) + 6`.
    Triangle,
    /// Partner-set graph is simple and triangle-free: `size ≥ ⌈2n + 2√n - 3⌉`.
    Mantel,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwoCnfDiagnostics {
    pub n: usize,
    pub size: usize,
    pub positive_input_occurrences: Vec<PositiveOccurrence>,
    pub equal_pb_pairs: Vec<EqualPbPair>,
    pub triangles: Vec<[usize; 3]>,
    pub mantel: Option<MantelCheck>,
    pub auxiliary_clauses: usize,
    pub components: usize,
    pub branch: RecurrenceBranch,
    /// Size floor the branch's recurrence gives, when defined.
    pub branch_bound: Option<usize>,
    /// Every chain `x_i → ¬x_j` through auxiliary literals exists.
    pub chains_complete: bool,
}

/// Diagnostics for a 2-CNF p-encoding in regular form.
pub fn analyze_2cnf(enc: &Encoding, limits: &Limits) -> Result<TwoCnfDiagnostics, StructureError> {
    if let Some(long) = enc.formula().iter().find(|c| c.len() > 2) {
        return Err(StructureError::NotTwoCnf(long.clone()));
    }
    let report = check_regular(enc, limits)?;
    let p_sets = report.p_sets.as_ref().ok_or(StructureError::NotRegular)?;
    let graphs = implication_graph(enc)?;
    let pb_graph = graphs
        .pb_graph
        .as_ref()
        .expect("regular encodings have a partner-set graph");
    let n = enc.n();

    let positive_input_occurrences = enc
        .formula()
        .iter()
        .flat_map(|c| {
            c.iter()
                .filter(|l| l.is_positive())
                .filter_map(|l| enc.input_index(l.var()))
                .map(move |input| PositiveOccurrence {
                    input,
                    clause: c.clone(),
                })
        })
        .collect();

    let mut equal_pb_pairs = Vec::new();
    for (r, pr) in p_sets.iter().enumerate() {
        for ps in &p_sets[r + 1..] {
            if pr.pb == ps.pb {
                let mut negated: Vec<Lit> = pr.pa.iter().map(|&l| !l).collect();
                negated.sort_unstable();
                equal_pb_pairs.push(EqualPbPair {
                    first: pr.input,
                    second: ps.input,
                    pb: pr.pb.clone(),
                    complementary: negated == ps.pa,
                });
            }
        }
    }
    let triangles = pb_graph.triangles();

    let (branch, mantel) = if !equal_pb_pairs.is_empty() {
        (RecurrenceBranch::EqualPb, None)
    } else if !triangles.is_empty() {
        (RecurrenceBranch::Triangle, None)
    } else {
        let v = pb_graph.vertices.len();
        let check = MantelCheck {
            auxiliaries: v,
            total_auxiliaries: enc.auxiliaries().len(),
            edges: pb_graph.edges.len(),
            required: 2.0 * (n as f64).sqrt(),
            holds: v * v >= 4 * n,
            tight: v * v == 4 * n,
        };
        (RecurrenceBranch::Mantel, Some(check))
    };
    let branch_bound = match branch {
        RecurrenceBranch::EqualPb => n.checked_sub(2).and_then(|m| lower_bound_2cnf(m).ok()).map(|b| b + 7),
        RecurrenceBranch::Triangle => n.checked_sub(2).and_then(|m| lower_bound_2cnf(m).ok()).map(|b| b + 6),
        RecurrenceBranch::Mantel => Some(2 * n + ceil_sqrt(4 * n) - 3),
    };

    let chains_complete = (1..=n).all(|i| (1..=n).filter(|&j| j != i).all(|j| graphs.chain(enc, i, j).is_some()));

    Ok(TwoCnfDiagnostics {
        n,
        size: enc.size(),
        positive_input_occurrences,
        equal_pb_pairs,
        triangles,
        mantel,
        auxiliary_clauses: graphs.auxiliary_clauses,
        components: graphs.components.len(),
        branch,
        branch_bound,
        chains_complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::{generate, EncodingKind};

    #[test]
    fn single_clause_arcs() {
        let g = ImplicationGraph::new(&Formula::from_dimacs(&[&[-1, 2]])).unwrap();
        let arcs: Vec<(i32, i32)> = g.arcs().map(|(a, b)| (a.to_dimacs(), b.to_dimacs())).collect();
        assert_eq!(arcs, vec![(1, 2), (-2, -1)]);
        assert!(g.is_skew_symmetric());
    }

    #[test]
    fn rejects_long_clauses() {
        let f = Formula::from_dimacs(&[&[1, 2, 3]]);
        assert!(matches!(ImplicationGraph::new(&f), Err(StructureError::NotTwoCnf(_))));
    }

    #[test]
    fn unit_clause_arc() {
        let g = ImplicationGraph::new(&Formula::from_dimacs(&[&[3]])).unwrap();
        assert_eq!(g.arc_count(), 1);
        assert!(g.has_arc(Lit::from_dimacs(-3).unwrap(), Lit::from_dimacs(3).unwrap()));
    }

    #[test]
    fn product_twenty_five() {
        let enc = generate(&EncodingKind::ProductAmo { n: 25 }).unwrap();
        let d = analyze_2cnf(&enc, &Limits::default()).unwrap();
        assert!(d.equal_pb_pairs.is_empty() && d.triangles.is_empty());
        assert_eq!(d.branch, RecurrenceBranch::Mantel);
        let m = d.mantel.unwrap();
        assert_eq!((m.auxiliaries, m.total_auxiliaries, m.edges), (10, 14, 25));
        assert!(m.holds && m.tight);
        assert_eq!(d.branch_bound, Some(57));
        assert!(d.positive_input_occurrences.is_empty());
        assert!(d.chains_complete);
    }

    #[test]
    fn sequential_is_not_regular() {
        let enc = generate(&EncodingKind::SequentialAmo { n: 5 }).unwrap();
        assert_eq!(
            analyze_2cnf(&enc, &Limits::default()).unwrap_err(),
            StructureError::NotRegular
        );
        let g = implication_graph(&enc).unwrap();
        assert!(g.graph.is_skew_symmetric());
        assert!(g.pb_graph.is_none());
    }
}
