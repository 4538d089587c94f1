use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::MaxPlusMatrix;
use crate::periodic::StaticGraph;
use crate::pteg::net::{Interval, Pteg};
use crate::scalar::{ExtendedReal, PosInf};

/// Lower (`A`) and upper (`B`) residence bounds of the places holding 0 and 1
/// initial tokens. Entry `(i, j)` describes the place from `t_j` to `t_i`;
/// missing places read `-inf` in `A` and `+inf` in `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicMatrices {
    pub a0: MaxPlusMatrix,
    pub a1: MaxPlusMatrix,
    pub b0: MaxPlusMatrix,
    pub b1: MaxPlusMatrix,
}

impl CharacteristicMatrices {
    pub fn empty(n: usize) -> Self {
        CharacteristicMatrices {
            a0: MaxPlusMatrix::epsilon(n),
            a1: MaxPlusMatrix::epsilon(n),
            b0: MaxPlusMatrix::filled(n, PosInf),
            b1: MaxPlusMatrix::filled(n, PosInf),
        }
    }

    pub fn n(&self) -> usize {
        self.a0.n()
    }
}

/// Reads the characteristic matrices off a net with at most one token per
/// place. Parallel places with the same marking are merged by intersecting
/// their windows.
pub fn characteristic_matrices(net: &Pteg) -> Result<CharacteristicMatrices> {
    let mut merged: BTreeMap<(usize, usize, u32), Interval> = BTreeMap::new();
    for (index, p) in net.places().iter().enumerate() {
        if p.tokens > 1 {
            return Err(Error::MarkingNotNormalized {
                place: index,
                tokens: p.tokens,
            });
        }
        let key = (p.to, p.from, p.tokens);
        let window = match merged.get(&key) {
            None => p.interval.clone(),
            Some(prev) => prev.intersect(&p.interval).ok_or(Error::ConflictingPlaces {
                from: p.from,
                to: p.to,
                tokens: p.tokens,
            })?,
        };
        merged.insert(key, window);
    }

    let mut cm = CharacteristicMatrices::empty(net.n());
    for ((i, j, tokens), window) in merged {
        let (a, b) = if tokens == 0 {
            (&mut cm.a0, &mut cm.b0)
        } else {
            (&mut cm.a1, &mut cm.b1)
        };
        a.set(i, j, window.lower().clone().into());
        b.set(i, j, window.upper().cloned().map_or(PosInf, ExtendedReal::from));
    }
    Ok(cm)
}

/// `L = -B1ᵀ`, `C = A0 ⊕ -B0ᵀ`, `R = A1 ⊕ E`.
pub fn lcr_matrices(cm: &CharacteristicMatrices) -> StaticGraph {
    let n = cm.n();
    let l = MaxPlusMatrix::from_fn(n, |i, j| cm.b1.get(j, i).negate());
    let c = MaxPlusMatrix::from_fn(n, |i, j| cm.a0.get(i, j).oplus(&cm.b0.get(j, i).negate()));
    let r = cm.a1.with_unit_diagonal();
    StaticGraph::new(l, c, r).expect("bounds are finite or -inf after negation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pteg::fixtures;
    use crate::pteg::net::Place;
    use crate::rational::{int, ratio};

    fn m(rows: &[&[&str]]) -> MaxPlusMatrix {
        MaxPlusMatrix::from_str_rows(rows).unwrap()
    }

    #[test]
    fn heat_treatment_matrices() {
        let cm = characteristic_matrices(&fixtures::heat()).unwrap();
        assert_eq!(*cm.a1.get(1, 0), ExtendedReal::int(2));
        assert_eq!(*cm.b1.get(1, 0), ExtendedReal::int(3));
        assert_eq!(*cm.a0.get(2, 1), ExtendedReal::from(ratio(1, 2)));
        assert_eq!(*cm.a1.get(1, 2), ExtendedReal::from(ratio(1, 2)));
        assert_eq!(*cm.a1.get(2, 2), ExtendedReal::zero());
        assert_eq!(*cm.b1.get(2, 2), ExtendedReal::int(4));
        assert_eq!(*cm.a1.get(2, 0), ExtendedReal::int(6));

        let g = lcr_matrices(&cm);
        assert_eq!(*g.l(), m(&[&[".", "-3", "."], &[".", ".", "."], &[".", ".", "-4"]]));
        assert_eq!(*g.c(), m(&[&[".", "0", "."], &[".", ".", "."], &[".", "0.5", "."]]));
        assert_eq!(*g.r(), m(&[&["0", ".", "."], &["2", "0", "0.5"], &["6", ".", "0"]]));
    }

    #[test]
    fn empty_net() {
        let cm = characteristic_matrices(&Pteg::with_count(2, vec![]).unwrap()).unwrap();
        assert_eq!(cm, CharacteristicMatrices::empty(2));
        let g = lcr_matrices(&cm);
        assert_eq!(*g.l(), MaxPlusMatrix::epsilon(2));
        assert_eq!(*g.c(), MaxPlusMatrix::epsilon(2));
        assert_eq!(*g.r(), MaxPlusMatrix::identity(2));
    }

    #[test]
    fn parallel_places_are_intersected() {
        let net = Pteg::with_count(
            2,
            vec![
                Place::new(0, 1, 0, Interval::closed(int(1), int(5)).unwrap()),
                Place::new(0, 1, 0, Interval::closed(int(2), int(7)).unwrap()),
            ],
        )
        .unwrap();
        let cm = characteristic_matrices(&net).unwrap();
        assert_eq!(*cm.a0.get(1, 0), ExtendedReal::int(2));
        assert_eq!(*cm.b0.get(1, 0), ExtendedReal::int(5));

        let clash = Pteg::with_count(
            2,
            vec![
                Place::new(0, 1, 0, Interval::closed(int(1), int(2)).unwrap()),
                Place::new(0, 1, 0, Interval::closed(int(3), int(4)).unwrap()),
            ],
        )
        .unwrap();
        assert_eq!(
            characteristic_matrices(&clash),
            Err(Error::ConflictingPlaces {
                from: 0,
                to: 1,
                tokens: 0
            })
        );
    }

    #[test]
    fn multi_token_places_must_be_normalized_first() {
        let net = Pteg::with_count(
            2,
            vec![Place::new(0, 1, 2, Interval::closed(int(1), int(2)).unwrap())],
        )
        .unwrap();
        assert!(matches!(
            characteristic_matrices(&net),
            Err(Error::MarkingNotNormalized { place: 0, tokens: 2 })
        ));
        assert!(characteristic_matrices(&net.normalize_marking()).is_ok());
    }
}
