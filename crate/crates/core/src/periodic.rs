//! Static graphs `(L, C, R)`, the Π(h) recursion over the ℕ-periodic graph
//! they generate, and the decision procedure for infinite-weight paths.
//!
//! Node `(i, k)` of the periodic graph is node `i` at shift `k >= 1`. `C`
//! holds arcs within a shift, `L` arcs from shift `k + 1` down to `k`, `R`
//! arcs from shift `k` up to `k + 1`.

use crate::error::{Error, Result};
use crate::kleene::Circuit;
use crate::matrix::MaxPlusMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaticGraph {
    l: MaxPlusMatrix,
    c: MaxPlusMatrix,
    r: MaxPlusMatrix,
}

impl StaticGraph {
    pub fn new(l: MaxPlusMatrix, c: MaxPlusMatrix, r: MaxPlusMatrix) -> Result<Self> {
        for m in [&c, &r] {
            if m.n() != l.n() {
                return Err(Error::DimensionMismatch {
                    left: l.n(),
                    right: m.n(),
                });
            }
        }
        for m in [&l, &c, &r] {
            m.ensure_over_rmax()?;
        }
        Ok(StaticGraph { l, c, r })
    }

    pub fn n(&self) -> usize {
        self.c.n()
    }

    pub fn l(&self) -> &MaxPlusMatrix {
        &self.l
    }

    pub fn c(&self) -> &MaxPlusMatrix {
        &self.c
    }

    pub fn r(&self) -> &MaxPlusMatrix {
        &self.r
    }

    /// The graph with the roles of `L` and `R` exchanged.
    pub fn reversed_shifts(&self) -> StaticGraph {
        StaticGraph {
            l: self.r.clone(),
            c: self.c.clone(),
            r: self.l.clone(),
        }
    }

    /// The first `k` shifts of the periodic graph as one `kn x kn` matrix:
    /// `C` on the diagonal blocks, `L` above and `R` below.
    /// Node `(i, s)` (0-based `i`, 1-based shift `s`) has index `(s - 1) n + i`.
    pub fn truncated_incidence(&self, k: usize) -> Result<MaxPlusMatrix> {
        if k == 0 {
            return Err(Error::ZeroLength);
        }
        let n = self.n();
        let mut m = MaxPlusMatrix::epsilon(k * n);
        for s in 0..k {
            m.put_block(s * n, s * n, &self.c);
            if s + 1 < k {
                m.put_block(s * n, (s + 1) * n, &self.l);
                m.put_block((s + 1) * n, s * n, &self.r);
            }
        }
        Ok(m)
    }

    /// `X ⊗ P* ⊗ Y ⊕ C` for `(X, Y) = (L, R)`, the matrix whose Kleene plus is
    /// the next Π.
    pub fn lift(&self, pi: &MaxPlusMatrix) -> MaxPlusMatrix {
        let star = pi.kleene_plus_saturating().with_unit_diagonal();
        self.l
            .otimes(&star)
            .and_then(|m| m.otimes(&self.r))
            .and_then(|m| m.oplus(&self.c))
            .expect("static graph matrices share one dimension")
    }
}

/// `Π(0) = C+`.
pub fn pi_initial(g: &StaticGraph) -> MaxPlusMatrix {
    g.c.kleene_plus_saturating()
}

/// `Π(h + 1) = (L Π(h)* R ⊕ C)+`; `+inf` entries of `pi` propagate.
pub fn pi_next(g: &StaticGraph, pi: &MaxPlusMatrix) -> MaxPlusMatrix {
    g.lift(pi).kleene_plus_saturating()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DetectOptions {
    /// Stop as soon as `Π(h + 1) = Π(h)`; when off, every Π up to `Π(n² + 1)`
    /// is evaluated.
    pub early_exit: bool,
}

impl Default for DetectOptions {
    fn default() -> Self {
        DetectOptions { early_exit: true }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PeriodicKind {
    NoInfPath,
    PositiveCircuit,
    Divergence,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeriodicOutcome {
    /// `pi_limit = Π(n²)`, the supremal weights between nodes of shift 1.
    /// `fixpoint_at` is the first `h` with `Π(h + 1) = Π(h)`, if observed.
    NoInfPath {
        pi_limit: MaxPlusMatrix,
        fixpoint_at: Option<usize>,
    },
    /// `Π(shift_bound)` has an infinite entry; `circuit` is a positive circuit
    /// of the matrix whose Kleene plus produced it.
    PositiveCircuit { shift_bound: usize, circuit: Circuit },
    /// `Π(n² + 1) != Π(n²)`; `entries` lists the `(i, j)` that grew.
    Divergence {
        entries: Vec<(usize, usize)>,
        previous: MaxPlusMatrix,
        next: MaxPlusMatrix,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicVerdict {
    pub outcome: PeriodicOutcome,
    /// Number of Π matrices computed, `Π(0)` included.
    pub evaluations: usize,
}

impl PeriodicVerdict {
    pub fn kind(&self) -> PeriodicKind {
        match self.outcome {
            PeriodicOutcome::NoInfPath { .. } => PeriodicKind::NoInfPath,
            PeriodicOutcome::PositiveCircuit { .. } => PeriodicKind::PositiveCircuit,
            PeriodicOutcome::Divergence { .. } => PeriodicKind::Divergence,
        }
    }

    pub fn has_inf_path(&self) -> bool {
        self.kind() != PeriodicKind::NoInfPath
    }

    pub fn pi_limit(&self) -> Option<&MaxPlusMatrix> {
        match &self.outcome {
            PeriodicOutcome::NoInfPath { pi_limit, .. } => Some(pi_limit),
            _ => None,
        }
    }
}

pub fn detect_inf_weight_n(g: &StaticGraph) -> PeriodicVerdict {
    detect_inf_weight_n_with(g, DetectOptions::default())
}

/// Decides whether the ℕ-periodic graph of `g` has an infinite-weight path by
/// computing `Π(0), ..., Π(n² + 1)`.
pub fn detect_inf_weight_n_with(g: &StaticGraph, options: DetectOptions) -> PeriodicVerdict {
    let n = g.n();
    let bound = n * n;

    let mut pi = pi_initial(g);
    let mut evaluations = 1;
    if pi.has_pos_inf() {
        let circuit = g.c.positive_circuit().expect("saturated C+ implies a positive circuit");
        return PeriodicVerdict {
            outcome: PeriodicOutcome::PositiveCircuit {
                shift_bound: 0,
                circuit,
            },
            evaluations,
        };
    }

    let mut fixpoint_at = None;
    for h in 0..=bound {
        if options.early_exit && fixpoint_at.is_some() {
            break;
        }
        let lifted = g.lift(&pi);
        let next = lifted.kleene_plus_saturating();
        evaluations += 1;
        if next.has_pos_inf() {
            let circuit = lifted
                .positive_circuit()
                .expect("saturated closure implies a positive circuit");
            return PeriodicVerdict {
                outcome: PeriodicOutcome::PositiveCircuit {
                    shift_bound: h + 1,
                    circuit,
                },
                evaluations,
            };
        }
        if next == pi {
            fixpoint_at.get_or_insert(h);
        } else if h == bound {
            let entries = next
                .indexed()
                .filter(|&((i, j), v)| v > pi.get(i, j))
                .map(|(ij, _)| ij)
                .collect();
            return PeriodicVerdict {
                outcome: PeriodicOutcome::Divergence {
                    entries,
                    previous: pi,
                    next,
                },
                evaluations,
            };
        }
        pi = next;
    }

    PeriodicVerdict {
        outcome: PeriodicOutcome::NoInfPath {
            pi_limit: pi,
            fixpoint_at,
        },
        evaluations,
    }
}
