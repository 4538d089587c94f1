//! Ultimately periodic graphs: a negative periodic part, a transient layer
//! at shift 0 and a positive periodic part.

use crate::error::{Error, Result};
use crate::kleene::Circuit;
use crate::matrix::MaxPlusMatrix;
use crate::periodic::{detect_inf_weight_n_with, DetectOptions, PeriodicVerdict, StaticGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UltimatelyPeriodicSpec {
    pub neg: StaticGraph,
    pub transient: MaxPlusMatrix,
    pub pos: StaticGraph,
}

impl UltimatelyPeriodicSpec {
    pub fn new(neg: StaticGraph, transient: MaxPlusMatrix, pos: StaticGraph) -> Result<Self> {
        for other in [pos.n(), transient.n()] {
            if other != neg.n() {
                return Err(Error::DimensionMismatch {
                    left: neg.n(),
                    right: other,
                });
            }
        }
        transient.ensure_over_rmax()?;
        Ok(UltimatelyPeriodicSpec { neg, transient, pos })
    }

    pub fn n(&self) -> usize {
        self.transient.n()
    }

    /// The spec read backwards: parts swapped and every matrix transposed.
    pub fn mirrored(&self) -> UltimatelyPeriodicSpec {
        let flip = |g: &StaticGraph| {
            StaticGraph::new(g.l().transpose(), g.c().transpose(), g.r().transpose())
                .expect("transposition preserves validity")
        };
        UltimatelyPeriodicSpec {
            neg: flip(&self.pos),
            transient: self.transient.transpose(),
            pos: flip(&self.neg),
        }
    }

    /// Shifts `-k..=k` as one `(2k + 1) n` square matrix, most negative first.
    pub fn truncated_incidence(&self, k: usize) -> MaxPlusMatrix {
        let n = self.n();
        let layers = 2 * k + 1;
        let mut m = MaxPlusMatrix::epsilon(layers * n);
        for s in 0..layers {
            let diag = match s.cmp(&k) {
                std::cmp::Ordering::Less => self.neg.c(),
                std::cmp::Ordering::Equal => &self.transient,
                std::cmp::Ordering::Greater => self.pos.c(),
            };
            m.put_block(s * n, s * n, diag);
            if s + 1 < layers {
                // An arc between shifts s and s + 1 belongs to the negative
                // part when the lower endpoint is below shift 0.
                let part = if s < k { &self.neg } else { &self.pos };
                m.put_block(s * n, (s + 1) * n, part.l());
                m.put_block((s + 1) * n, s * n, part.r());
            }
        }
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UltimateKind {
    NoInfPath,
    NegPartDiverges,
    PosPartDiverges,
    TransientPositiveCircuit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UltimateVerdict {
    NoInfPath {
        neg: PeriodicVerdict,
        pos: PeriodicVerdict,
        combined: MaxPlusMatrix,
    },
    NegPartDiverges {
        neg: PeriodicVerdict,
    },
    PosPartDiverges {
        pos: PeriodicVerdict,
    },
    /// Both periodic parts are fine but paths through the transient layer
    /// close a positive circuit of `combined`.
    TransientPositiveCircuit {
        neg: PeriodicVerdict,
        pos: PeriodicVerdict,
        combined: MaxPlusMatrix,
        circuit: Circuit,
    },
}

impl UltimateVerdict {
    pub fn kind(&self) -> UltimateKind {
        match self {
            UltimateVerdict::NoInfPath { .. } => UltimateKind::NoInfPath,
            UltimateVerdict::NegPartDiverges { .. } => UltimateKind::NegPartDiverges,
            UltimateVerdict::PosPartDiverges { .. } => UltimateKind::PosPartDiverges,
            UltimateVerdict::TransientPositiveCircuit { .. } => {
                UltimateKind::TransientPositiveCircuit
            }
        }
    }

    pub fn has_inf_path(&self) -> bool {
        self.kind() != UltimateKind::NoInfPath
    }

    pub fn combined(&self) -> Option<&MaxPlusMatrix> {
        match self {
            UltimateVerdict::NoInfPath { combined, .. }
            | UltimateVerdict::TransientPositiveCircuit { combined, .. } => Some(combined),
            _ => None,
        }
    }
}

pub fn detect_inf_weight_u(spec: &UltimatelyPeriodicSpec) -> UltimateVerdict {
    detect_inf_weight_u_with(spec, DetectOptions::default())
}

/// Checks the negative part, the positive part, and finally the graph over
/// shift-0 nodes obtained by folding both parts into the transient layer.
pub fn detect_inf_weight_u_with(
    spec: &UltimatelyPeriodicSpec,
    options: DetectOptions,
) -> UltimateVerdict {
    // Read from shift 0 outwards, the negative part is an ordinary ℕ-periodic
    // graph whose up and down arcs are R_n and L_n respectively.
    let neg_graph = spec.neg.reversed_shifts();
    let neg = detect_inf_weight_n_with(&neg_graph, options);
    let Some(pi_n) = neg.pi_limit().cloned() else {
        return UltimateVerdict::NegPartDiverges { neg };
    };
    let pos = detect_inf_weight_n_with(&spec.pos, options);
    let Some(pi_p) = pos.pi_limit().cloned() else {
        return UltimateVerdict::PosPartDiverges { pos };
    };

    let combined = fold(&neg_graph, &pi_n, &spec.transient, &spec.pos, &pi_p);
    match combined.positive_circuit() {
        None => UltimateVerdict::NoInfPath { neg, pos, combined },
        Some(circuit) => UltimateVerdict::TransientPositiveCircuit {
            neg,
            pos,
            combined,
            circuit,
        },
    }
}

/// `X_a Π_a* Y_a ⊕ C_t ⊕ X_b Π_b* Y_b` for the two graphs `a` and `b`.
fn fold(
    a: &StaticGraph,
    pi_a: &MaxPlusMatrix,
    transient: &MaxPlusMatrix,
    b: &StaticGraph,
    pi_b: &MaxPlusMatrix,
) -> MaxPlusMatrix {
    let side = |g: &StaticGraph, pi: &MaxPlusMatrix| {
        let star = pi.with_unit_diagonal();
        g.l().otimes(&star).and_then(|m| m.otimes(g.r())).expect("dimensions checked")
    };
    side(a, pi_a)
        .oplus(transient)
        .and_then(|m| m.oplus(&side(b, pi_b)))
        .expect("dimensions checked")
}
