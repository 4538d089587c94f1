//! Kleene plus / star, membership in the class of graphs without
//! infinite-weight paths, and positive-circuit certificates.

use num_traits::Zero;

use crate::error::Result;
use crate::matrix::MaxPlusMatrix;
use crate::rational::Rational;
use crate::scalar::{ExtendedReal, PosInf};

/// An elementary circuit of a precedence graph, listed in traversal order:
/// the arcs are `nodes[0] -> nodes[1] -> ... -> nodes[last] -> nodes[0]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub nodes: Vec<usize>,
    pub weight: Rational,
}

impl Circuit {
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let len = self.nodes.len();
        (0..len).map(move |k| (self.nodes[k], self.nodes[(k + 1) % len]))
    }
}

/// Outcome of a membership test. `witness_node` is `None` exactly when the
/// graph has no infinite-weight path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonegsetVerdict {
    pub witness_node: Option<usize>,
}

impl NonegsetVerdict {
    pub fn is_member(&self) -> bool {
        self.witness_node.is_none()
    }
}

impl MaxPlusMatrix {
    /// `A+ = A ⊕ A² ⊕ ...`: supremal path weights over paths of length >= 1.
    ///
    /// Entries reachable through a positive-weight circuit are `+inf`.
    /// The input must not contain `+inf`.
    pub fn kleene_plus(&self) -> Result<MaxPlusMatrix> {
        self.ensure_over_rmax()?;
        Ok(saturating_closure(self))
    }

    /// `A* = A+ ⊕ E`.
    pub fn kleene_star(&self) -> Result<MaxPlusMatrix> {
        Ok(self.kleene_plus()?.with_unit_diagonal())
    }

    /// Kleene plus in the complete semiring: `+inf` entries are accepted and
    /// behave as arcs of unbounded weight.
    pub fn kleene_plus_saturating(&self) -> MaxPlusMatrix {
        saturating_closure(self)
    }

    pub fn in_nonegset(&self) -> Result<NonegsetVerdict> {
        let plus = self.kleene_plus()?;
        let witness_node = (0..self.n()).find(|&i| plus.get(i, i).is_pos_inf());
        Ok(NonegsetVerdict { witness_node })
    }

    /// Finds an elementary circuit of positive weight, if one exists.
    ///
    /// Only finite entries are treated as arcs. The circuit is rotated so
    /// that its smallest node comes first.
    pub fn positive_circuit(&self) -> Option<Circuit> {
        find_positive_circuit(self)
    }
}

fn saturating_closure(a: &MaxPlusMatrix) -> MaxPlusMatrix {
    let n = a.n();

    // Longest paths over the finite arcs. On positive circuits the values are
    // meaningless but every node lying on one ends with a positive diagonal.
    let mut w = MaxPlusMatrix::from_fn(n, |i, j| match a.get(i, j) {
        PosInf => ExtendedReal::NegInf,
        v => v.clone(),
    });
    for k in 0..n {
        for i in 0..n {
            let wik = w.get(i, k).clone();
            if wik.is_neg_inf() {
                continue;
            }
            for j in 0..n {
                let wkj = w.get(k, j);
                if wkj.is_neg_inf() {
                    continue;
                }
                let cand = wik.otimes(wkj);
                w.get_mut(i, j).raise_to(&cand);
            }
        }
    }

    // reach[i][j]: a path (possibly empty) leads from node j to node i.
    let mut reach = vec![vec![false; n]; n];
    for ((i, j), v) in a.indexed() {
        reach[i][j] = !v.is_neg_inf();
    }
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    for k in 0..n {
        let via = reach[k].clone();
        for row in reach.iter_mut().filter(|row| row[k]) {
            for (r, &v) in row.iter_mut().zip(&via) {
                *r |= v;
            }
        }
    }

    // Every path entering `from` and later leaving `to` is unbounded:
    // either a node on a positive circuit (from == to) or an infinite arc.
    let zero = ExtendedReal::zero();
    let mut hot: Vec<(usize, usize)> = (0..n).filter(|&k| *w.get(k, k) > zero).map(|k| (k, k)).collect();
    hot.extend(a.indexed().filter(|(_, v)| v.is_pos_inf()).map(|((i, j), _)| (j, i)));

    for (from, to) in hot {
        let sources: Vec<usize> = (0..n).filter(|&s| reach[from][s]).collect();
        for t in (0..n).filter(|&t| reach[t][to]) {
            for &s in &sources {
                w.set(t, s, PosInf);
            }
        }
    }
    w
}

fn find_positive_circuit(a: &MaxPlusMatrix) -> Option<Circuit> {
    let n = a.n();
    let arcs: Vec<(usize, usize, &Rational)> = a
        .indexed()
        .filter_map(|((i, j), v)| v.as_finite().map(|w| (j, i, w)))
        .collect();

    // Bellman-Ford from a virtual source joined to every node by a 0 arc.
    let mut dist = vec![Rational::zero(); n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut last = None;
    for _ in 0..n {
        last = None;
        for &(from, to, w) in &arcs {
            let cand = &dist[from] + w;
            if cand > dist[to] {
                dist[to] = cand;
                pred[to] = Some(from);
                last = Some(to);
            }
        }
        last?;
    }

    let mut v = last?;
    for _ in 0..n {
        v = pred[v].expect("relaxed node has a predecessor");
    }
    let mut cycle = vec![v];
    let mut u = pred[v].expect("node on a cycle has a predecessor");
    while u != v {
        cycle.push(u);
        u = pred[u].expect("node on a cycle has a predecessor");
    }
    cycle.reverse();
    let start = cycle
        .iter()
        .enumerate()
        .min_by_key(|(_, &node)| node)
        .map(|(k, _)| k)
        .unwrap_or(0);
    cycle.rotate_left(start);

    let mut circuit = Circuit {
        nodes: cycle,
        weight: Rational::zero(),
    };
    circuit.weight = circuit
        .arcs()
        .map(|(from, to)| a.get(to, from).as_finite().expect("circuit uses finite arcs").clone())
        .sum();
    debug_assert!(circuit.weight > Rational::zero());
    Some(circuit)
}
