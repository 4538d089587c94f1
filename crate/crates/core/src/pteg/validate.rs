use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::pteg::consistency::Semantics;
use crate::pteg::net::Pteg;
use crate::rational::{format_rational, Rational};

/// Firing times `x[k][i]` of transition `i` at its `(k + 1)`-th firing.
/// `t0` is the arrival time of the initial tokens (strict semantics only).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    pub t0: Option<Rational>,
    pub x: Vec<Vec<Rational>>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    /// `x_i(k + m) < x_j(k) + lower`.
    LowerBound,
    /// `x_i(k + m) > x_j(k) + upper`.
    UpperBound,
    /// `x_i(k) < t0 + lower` for an initial token (`k <= m`).
    InitialLowerBound,
    /// `x_i(k) > t0 + upper` for an initial token (`k <= m`).
    InitialUpperBound,
    /// `x_i(1) < t0`.
    BeforeStart,
    /// `x_i(k + 1) < x_i(k)`.
    Decreasing,
}

/// One violated inequality. Indices are 0-based; `event` is 1-based like the
/// firing counter. `excess` is the (positive) amount by which it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub transition: usize,
    pub event: usize,
    pub place: Option<usize>,
    pub excess: Rational,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            ViolationKind::LowerBound => "fires too early after its upstream transition",
            ViolationKind::UpperBound => "fires too late after its upstream transition",
            ViolationKind::InitialLowerBound => "fires too early for an initial token",
            ViolationKind::InitialUpperBound => "fires too late for an initial token",
            ViolationKind::BeforeStart => "fires before t0",
            ViolationKind::Decreasing => "fires earlier than at its previous firing",
        };
        write!(f, "t{} at firing {} {what}", self.transition + 1, self.event)?;
        if let Some(p) = self.place {
            write!(f, " (place {})", p + 1)?;
        }
        write!(f, " by {}", format_rational(&self.excess))
    }
}

/// Checks every constraint of `net` that involves only firings `1..=K`,
/// directly on the places (multi-token places included).
pub fn validate_trajectory(
    net: &Pteg,
    semantics: Semantics,
    traj: &Trajectory,
) -> Result<Vec<Violation>> {
    let n = net.n();
    if traj.x.is_empty() {
        return Err(Error::EmptyTrajectory);
    }
    if let Some(bad) = traj.x.iter().find(|v| v.len() != n) {
        return Err(Error::TrajectoryDimension {
            expected: n,
            found: bad.len(),
        });
    }
    let k_max = traj.x.len();
    let x = |i: usize, k: usize| &traj.x[k - 1][i];
    let mut out = Vec::new();
    let mut record = |kind, transition, event, place, excess: Rational| {
        if excess > Rational::zero() {
            out.push(Violation {
                kind,
                transition,
                event,
                place,
                excess,
            });
        }
    };

    for i in 0..n {
        for k in 1..k_max {
            record(ViolationKind::Decreasing, i, k + 1, None, x(i, k) - x(i, k + 1));
        }
    }

    for (index, p) in net.places().iter().enumerate() {
        let m = p.tokens as usize;
        let (i, j) = (p.to, p.from);
        for k in 1..=k_max.saturating_sub(m) {
            let base = x(j, k);
            let target = x(i, k + m);
            record(
                ViolationKind::LowerBound,
                i,
                k + m,
                Some(index),
                base + p.interval.lower() - target,
            );
            if let Some(ub) = p.interval.upper() {
                record(ViolationKind::UpperBound, i, k + m, Some(index), target - base - ub);
            }
        }
    }

    if semantics == Semantics::Strict {
        let t0 = traj.t0.clone().unwrap_or_else(Rational::zero);
        for i in 0..n {
            record(ViolationKind::BeforeStart, i, 1, None, &t0 - x(i, 1));
        }
        for (index, p) in net.places().iter().enumerate() {
            for k in 1..=(p.tokens as usize).min(k_max) {
                let target = x(p.to, k);
                record(
                    ViolationKind::InitialLowerBound,
                    p.to,
                    k,
                    Some(index),
                    &t0 + p.interval.lower() - target,
                );
                if let Some(ub) = p.interval.upper() {
                    record(
                        ViolationKind::InitialUpperBound,
                        p.to,
                        k,
                        Some(index),
                        target - &t0 - ub,
                    );
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pteg::fixtures;
    use crate::rational::{int, ratio};

    fn ints(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn heat_treatment_initial_window() {
        let traj = Trajectory {
            t0: Some(int(0)),
            x: vec![vec![int(0), ratio(5, 2), int(6)]],
        };
        let v = validate_trajectory(&fixtures::heat(), Semantics::Strict, &traj).unwrap();
        let window = v
            .iter()
            .find(|v| v.kind == ViolationKind::InitialUpperBound)
            .expect("furnace window is violated");
        assert_eq!((window.transition, window.event, window.place), (2, 1, Some(4)));
        assert_eq!(window.excess, int(2));
        // t1 must also wait for the unloading of t2 at the same firing
        let loose = validate_trajectory(&fixtures::heat(), Semantics::Loose, &traj).unwrap();
        assert_eq!(loose.len(), 1);
        assert_eq!((loose[0].kind, loose[0].transition), (ViolationKind::LowerBound, 0));
    }

    #[test]
    fn nonperiodic_trajectory_is_valid() {
        let mut x = ints(&[&[0, 1, 1, 3], &[3, 4, 2, 4]]);
        for k in 2..6 {
            let next = x[k - 2].iter().map(|v| v + int(4)).collect();
            x.push(next);
        }
        let traj = Trajectory { t0: Some(int(0)), x };
        let net = fixtures::nonperiodic();
        assert!(validate_trajectory(&net, Semantics::Strict, &traj).unwrap().is_empty());
        assert!(validate_trajectory(&net, Semantics::Loose, &traj).unwrap().is_empty());
    }

    #[test]
    fn decreasing_firings_are_reported() {
        let net = crate::pteg::Pteg::with_count(1, vec![]).unwrap();
        let traj = Trajectory {
            t0: None,
            x: ints(&[&[3], &[1]]),
        };
        let v = validate_trajectory(&net, Semantics::Loose, &traj).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::Decreasing);
        assert_eq!(v[0].event, 2);
        assert_eq!(v[0].to_string(), "t1 at firing 2 fires earlier than at its previous firing by 2");
    }

    #[test]
    fn shape_errors() {
        let net = fixtures::heat();
        let empty = Trajectory { t0: None, x: vec![] };
        assert_eq!(validate_trajectory(&net, Semantics::Loose, &empty), Err(Error::EmptyTrajectory));
        let short = Trajectory {
            t0: None,
            x: ints(&[&[0, 0]]),
        };
        assert!(validate_trajectory(&net, Semantics::Loose, &short).is_err());
    }

    #[test]
    fn multi_token_place_in_strict_mode() {
        // t1 -> t2 holding two tokens with window [1, 2]
        let net = crate::pteg::Pteg::with_count(
            2,
            vec![crate::pteg::Place::new(
                0,
                1,
                2,
                crate::pteg::Interval::closed(int(1), int(2)).unwrap(),
            )],
        )
        .unwrap();
        let ok = Trajectory {
            t0: Some(int(0)),
            x: ints(&[&[0, 1], &[0, 2], &[5, 2]]),
        };
        assert!(validate_trajectory(&net, Semantics::Strict, &ok).unwrap().is_empty());
        let late = Trajectory {
            t0: Some(int(0)),
            x: ints(&[&[0, 1], &[0, 3]]),
        };
        let v = validate_trajectory(&net, Semantics::Strict, &late).unwrap();
        assert_eq!(v[0].kind, ViolationKind::InitialUpperBound);
        assert_eq!(v[0].event, 2);
    }
}
