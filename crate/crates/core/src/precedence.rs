//! Finite systems of precedence constraints `x >= A ⊗ x`: feasibility,
//! solution extraction, and the Φ completion operator.

use crate::error::{Error, Result};
use crate::kleene::Circuit;
use crate::matrix::MaxPlusMatrix;
use crate::rational::Rational;

/// A well-founded enumeration of node pairs used to pick which missing
/// arc Φ adds next. Indices are 0-based; smaller rank wins.
pub trait GoodOrder {
    fn rank(&self, row: usize, col: usize) -> u64;
}

/// The Cantor pairing order on 1-based pairs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CantorOrder;

impl GoodOrder for CantorOrder {
    fn rank(&self, row: usize, col: usize) -> u64 {
        cantor_index(row as u64 + 1, col as u64 + 1)
    }
}

/// `f(m, n) = (m + n - 2)(m + n - 1) / 2 + m` for `m, n >= 1`.
pub fn cantor_index(m: u64, n: u64) -> u64 {
    assert!(m >= 1 && n >= 1, "cantor_index takes 1-based arguments");
    (m + n - 2) * (m + n - 1) / 2 + m
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    /// A finite vector with `x >= A ⊗ x`.
    Feasible(Vec<Rational>),
    /// A positive-weight circuit ruling every solution out.
    Infeasible(Circuit),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn solution(&self) -> Option<&[Rational]> {
        match self {
            Feasibility::Feasible(x) => Some(x),
            Feasibility::Infeasible(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&Circuit> {
        match self {
            Feasibility::Feasible(_) => None,
            Feasibility::Infeasible(c) => Some(c),
        }
    }
}

/// Decides whether `x >= A ⊗ x` has a real solution.
///
/// When it does, returns `x_i = max_j (A*)_ij`, the image of the all-zero
/// vector under `A*`.
pub fn has_solution(a: &MaxPlusMatrix) -> Result<Feasibility> {
    let star = a.kleene_star()?;
    if (0..a.n()).any(|i| star.get(i, i).is_pos_inf()) {
        let circuit = a
            .positive_circuit()
            .expect("saturated diagonal implies a positive circuit");
        return Ok(Feasibility::Infeasible(circuit));
    }
    let x = star
        .rows()
        .map(|row| {
            row.iter()
                .max()
                .and_then(|v| v.as_finite())
                .expect("the diagonal of a closed star is 0")
                .clone()
        })
        .collect();
    Ok(Feasibility::Feasible(x))
}

/// `true` when `x_i >= A_ij + x_j` holds for every finite `A_ij`.
pub fn satisfies(a: &MaxPlusMatrix, x: &[Rational]) -> bool {
    a.n() == x.len()
        && a.indexed().all(|((i, j), w)| match w.as_finite() {
            Some(w) => x[i] >= w + &x[j],
            None => !w.is_pos_inf(),
        })
}

/// One application of Φ: the star of `a`, plus the reverse arc of the least
/// pair (under `order`) that is connected in one direction only.
pub fn phi_step(a: &MaxPlusMatrix, order: &dyn GoodOrder) -> Result<MaxPlusMatrix> {
    let mut star = a.kleene_star()?;
    if let Some(node) = (0..a.n()).find(|&i| star.get(i, i).is_pos_inf()) {
        return Err(Error::NotInNonegset { node });
    }
    let pair = star
        .indexed()
        .filter(|((i, j), v)| v.is_neg_inf() && !star.get(*j, *i).is_neg_inf())
        .map(|(ij, _)| ij)
        .min_by_key(|&(i, j)| order.rank(i, j));
    if let Some((i, j)) = pair {
        let back = star.get(j, i).negate();
        star.set(i, j, back);
    }
    Ok(star)
}

/// Iterates Φ until it stabilises. `max_iters` defaults to `n² + n`.
pub fn phi_closure(
    a: &MaxPlusMatrix,
    order: &dyn GoodOrder,
    max_iters: Option<usize>,
) -> Result<MaxPlusMatrix> {
    let n = a.n();
    let limit = max_iters.unwrap_or(n * n + n);
    let mut current = a.clone();
    for _ in 0..limit {
        let next = phi_step(&current, order)?;
        if next == current {
            return Ok(current);
        }
        current = next;
    }
    Err(Error::IterationLimit { limit })
}
