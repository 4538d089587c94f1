use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::MaxPlusMatrix;
use crate::periodic::StaticGraph;
use crate::pteg::consistency::{check, Semantics};
use crate::pteg::net::Pteg;
use crate::pteg::validate::Trajectory;
use crate::rational::Rational;

/// The precedence matrix over firings `1..=k` of a static graph. Under strict
/// semantics a zero-shift block for the initial tokens comes first, with all
/// its entries 0 so that its nodes share one time `t0`.
pub fn prefix_matrix(g: &StaticGraph, semantics: Semantics, k: usize) -> Result<MaxPlusMatrix> {
    if k == 0 {
        return Err(Error::ZeroLength);
    }
    match semantics {
        Semantics::Loose => g.truncated_incidence(k),
        Semantics::Strict => {
            let mut m = g.truncated_incidence(k + 1)?;
            m.put_block(0, 0, &MaxPlusMatrix::zeros(g.n()));
            Ok(m)
        }
    }
}

/// Earliest schedule for the first `k` firings of a consistent net.
///
/// Loose: the least solution `A* ⊗ 0`, shifted so that its earliest firing
/// happens at `t0`. Strict: the least solution whose initial block equals
/// `t0`. Only the net's own transitions are reported, not the ones added by
/// marking normalization.
pub fn witness_prefix(net: &Pteg, semantics: Semantics, k: usize, t0: &Rational) -> Result<Trajectory> {
    if k == 0 {
        return Err(Error::ZeroLength);
    }
    let report = check(net, semantics)?;
    if !report.consistent {
        return Err(Error::Inconsistent(match semantics {
            Semantics::Loose => "loose",
            Semantics::Strict => "strict",
        }));
    }
    let g = &report.graph;
    let n = g.n();
    let star = prefix_matrix(g, semantics, k)?.kleene_star()?;

    let sources = match semantics {
        Semantics::Loose => 0..star.n(),
        Semantics::Strict => 0..n,
    };
    let times: Vec<Rational> = star
        .rows()
        .map(|row| {
            row[sources.clone()]
                .iter()
                .max()
                .and_then(|v| v.as_finite())
                .cloned()
                .expect("every firing is reachable and bounded in a consistent prefix")
        })
        .collect();

    let (offset, skip) = match semantics {
        Semantics::Loose => (t0 - times.iter().min().cloned().unwrap_or_else(Rational::zero), 0),
        Semantics::Strict => (t0.clone(), n),
    };
    let x = times[skip..]
        .chunks(n)
        .map(|block| block[..net.n()].iter().map(|v| v + &offset).collect())
        .collect();
    Ok(Trajectory {
        t0: (semantics == Semantics::Strict).then(|| t0.clone()),
        x,
    })
}
