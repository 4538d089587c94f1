use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::kleene::Circuit;
use crate::matrix::MaxPlusMatrix;
use crate::periodic::{detect_inf_weight_n, PeriodicVerdict, StaticGraph};
use crate::pteg::characteristic::{characteristic_matrices, lcr_matrices, CharacteristicMatrices};
use crate::pteg::net::Pteg;

/// How the initial tokens are treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Semantics {
    /// Initial tokens impose no timing constraint.
    Loose,
    /// Initial tokens arrive at `t0` and obey their place's window.
    Strict,
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Semantics::Loose => "loose",
            Semantics::Strict => "strict",
        })
    }
}

impl FromStr for Semantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "loose" => Ok(Semantics::Loose),
            "strict" => Ok(Semantics::Strict),
            other => Err(Error::Schema(format!("unknown semantics {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StrictKind {
    Consistent,
    CenterCircuit,
    PositiveCircuit,
    TransientCircuit,
    NoFixpoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrictOutcome {
    /// `pi_limit` is the converged `Π_p*`, first repeated at step
    /// `fixpoint_at`; `combined = C_t ⊕ L Π_p* R` has no positive circuit.
    Consistent {
        pi_limit: MaxPlusMatrix,
        fixpoint_at: usize,
        combined: MaxPlusMatrix,
    },
    /// `C` alone already has a positive circuit.
    CenterCircuit { circuit: Circuit },
    /// `L Π_p(step) R ⊕ C` has a positive circuit.
    PositiveCircuit { step: usize, circuit: Circuit },
    /// The positive part converged but the zero-shift layer closes a
    /// positive circuit.
    TransientCircuit {
        fixpoint_at: usize,
        combined: MaxPlusMatrix,
        circuit: Circuit,
    },
    /// `Π_p` kept growing for `n² + 1` steps; `entries` grew in the last one.
    NoFixpoint {
        entries: Vec<(usize, usize)>,
        previous: MaxPlusMatrix,
        next: MaxPlusMatrix,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictVerdict {
    pub outcome: StrictOutcome,
    /// Number of `Π_p` matrices computed, `Π_p(0)` included.
    pub evaluations: usize,
}

impl StrictVerdict {
    pub fn kind(&self) -> StrictKind {
        match self.outcome {
            StrictOutcome::Consistent { .. } => StrictKind::Consistent,
            StrictOutcome::CenterCircuit { .. } => StrictKind::CenterCircuit,
            StrictOutcome::PositiveCircuit { .. } => StrictKind::PositiveCircuit,
            StrictOutcome::TransientCircuit { .. } => StrictKind::TransientCircuit,
            StrictOutcome::NoFixpoint { .. } => StrictKind::NoFixpoint,
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.kind() == StrictKind::Consistent
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Loose(PeriodicVerdict),
    Strict(StrictVerdict),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub semantics: Semantics,
    pub consistent: bool,
    pub certificate: Certificate,
    /// The static graph of the normalized net the verdict is about; the
    /// net's own transitions come first.
    pub graph: StaticGraph,
}

pub fn check(net: &Pteg, semantics: Semantics) -> Result<ConsistencyReport> {
    let normalized = net.normalize_marking();
    Ok(check_matrices(&characteristic_matrices(&normalized)?, semantics))
}

pub fn check_loose(net: &Pteg) -> Result<ConsistencyReport> {
    check(net, Semantics::Loose)
}

pub fn check_strict(net: &Pteg) -> Result<ConsistencyReport> {
    check(net, Semantics::Strict)
}

/// The static graph of `net` after normalizing its marking.
pub fn static_graph(net: &Pteg) -> Result<StaticGraph> {
    let normalized = net.normalize_marking();
    Ok(lcr_matrices(&characteristic_matrices(&normalized)?))
}

/// Decides consistency of the net described by `cm`. Unlike a [`Pteg`],
/// characteristic matrices may encode an empty window (`A > B`).
pub fn check_matrices(cm: &CharacteristicMatrices, semantics: Semantics) -> ConsistencyReport {
    let graph = lcr_matrices(cm);
    let (consistent, certificate) = match semantics {
        Semantics::Loose => {
            let v = detect_inf_weight_n(&graph);
            (!v.has_inf_path(), Certificate::Loose(v))
        }
        Semantics::Strict => {
            let v = strict_verdict(&graph);
            (v.is_consistent(), Certificate::Strict(v))
        }
    };
    ConsistencyReport {
        semantics,
        consistent,
        certificate,
        graph,
    }
}

/// Consistency under strict initial conditions for the static graph of a
/// normalized net: the zero-shift layer is the all-zero matrix, the positive
/// part is `(L, C, R)`.
pub fn strict_verdict(g: &StaticGraph) -> StrictVerdict {
    let n = g.n();
    let transient = MaxPlusMatrix::zeros(n);
    let closed = |m: &MaxPlusMatrix| m.kleene_plus_saturating().with_unit_diagonal();
    let lift = |pi: &MaxPlusMatrix| {
        g.l()
            .otimes(pi)
            .and_then(|m| m.otimes(g.r()))
            .expect("static graph matrices share one dimension")
    };

    if let Some(circuit) = g.c().positive_circuit() {
        return StrictVerdict {
            outcome: StrictOutcome::CenterCircuit { circuit },
            evaluations: 0,
        };
    }
    // Π_p(0), ..., Π_p(h) have been computed at the top of step h
    let mut pi = closed(g.c());
    for h in 0..=n * n {
        let x = lift(&pi).oplus(g.c()).expect("same dimension");
        if let Some(circuit) = x.positive_circuit() {
            return StrictVerdict {
                outcome: StrictOutcome::PositiveCircuit { step: h, circuit },
                evaluations: h + 1,
            };
        }
        let next = closed(&x);
        let evaluations = h + 2;
        if next == pi {
            let combined = transient.oplus(&lift(&next)).expect("same dimension");
            let outcome = match combined.positive_circuit() {
                None => StrictOutcome::Consistent {
                    pi_limit: next,
                    fixpoint_at: h,
                    combined,
                },
                Some(circuit) => StrictOutcome::TransientCircuit {
                    fixpoint_at: h,
                    combined,
                    circuit,
                },
            };
            return StrictVerdict {
                outcome,
                evaluations,
            };
        }
        if h == n * n {
            let entries = next
                .indexed()
                .filter(|&((i, j), v)| v > pi.get(i, j))
                .map(|(ij, _)| ij)
                .collect();
            return StrictVerdict {
                outcome: StrictOutcome::NoFixpoint {
                    entries,
                    previous: pi,
                    next,
                },
                evaluations,
            };
        }
        pi = next;
    }
    unreachable!("the loop returns at its last step")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pteg::fixtures;
    use crate::rational::int;
    use crate::scalar::ExtendedReal;

    #[test]
    fn loose_verdicts_of_two_transition_net() {
        assert!(check_loose(&fixtures::two_loop(-1, 1)).unwrap().consistent);
        assert!(!check_loose(&fixtures::two_loop(-5, 4)).unwrap().consistent);
        for (a, b, ok) in [(-1, 1, true), (-1, 2, false), (-5, 4, false)] {
            let report = check_matrices(&fixtures::two_loop_matrices(a, b), Semantics::Loose);
            assert_eq!(report.consistent, ok, "alpha={a} beta={b}");
        }
    }

    #[test]
    fn heat_treatment_loose_but_not_strict() {
        assert!(check_loose(&fixtures::heat()).unwrap().consistent);
        let report = check_strict(&fixtures::heat()).unwrap();
        assert!(!report.consistent);
        let Certificate::Strict(v) = &report.certificate else {
            panic!("strict report carries a strict verdict");
        };
        match &v.outcome {
            StrictOutcome::TransientCircuit { circuit, .. } => assert_eq!(circuit.weight, int(2)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn nonperiodic_net_is_strictly_consistent() {
        let report = check_strict(&fixtures::nonperiodic()).unwrap();
        assert!(report.consistent);
        let Certificate::Strict(v) = &report.certificate else {
            panic!("strict report carries a strict verdict");
        };
        if let StrictOutcome::Consistent { combined, .. } = &v.outcome {
            assert!(combined.rows().flatten().all(|e| *e == ExtendedReal::zero()));
        }
    }

    #[test]
    fn strict_rejects_positive_center() {
        let g = StaticGraph::new(
            MaxPlusMatrix::epsilon(1),
            MaxPlusMatrix::from_str_rows(&[&["1"]]).unwrap(),
            MaxPlusMatrix::identity(1),
        )
        .unwrap();
        let v = strict_verdict(&g);
        assert_eq!(v.kind(), StrictKind::CenterCircuit);
        assert_eq!(v.evaluations, 0);
    }

    #[test]
    fn semantics_parse() {
        assert_eq!("loose".parse::<Semantics>().unwrap(), Semantics::Loose);
        assert_eq!(Semantics::Strict.to_string(), "strict");
        assert!("lax".parse::<Semantics>().is_err());
    }
}
