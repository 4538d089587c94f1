//! Independent oracles and generators shared by the integration tests.
//!
//! The oracles work on small integer weights with plain `i64` arithmetic and
//! brute force, so they share no code with the library's closures.
#![allow(dead_code)]

use std::collections::HashMap;

use num_traits::ToPrimitive;
use proptest::prelude::*;
use pteg_core::periodic::StaticGraph;
use pteg_core::pteg::{Interval, Place, Pteg, Semantics};
use pteg_core::rational::int;
use pteg_core::{ExtendedReal, MaxPlusMatrix};

/// An integer max-plus weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum W {
    NegInf,
    Fin(i64),
    PosInf,
}

pub type IntMatrix = Vec<Vec<W>>;

pub fn to_int(m: &MaxPlusMatrix) -> IntMatrix {
    m.rows()
        .map(|row| {
            row.iter()
                .map(|v| match v {
                    ExtendedReal::NegInf => W::NegInf,
                    ExtendedReal::PosInf => W::PosInf,
                    ExtendedReal::Finite(r) => {
                        assert!(r.is_integer(), "oracle expects integer weights");
                        W::Fin(r.to_integer().to_i64().unwrap())
                    }
                })
                .collect()
        })
        .collect()
}

pub fn from_int(m: &IntMatrix) -> MaxPlusMatrix {
    MaxPlusMatrix::from_rows(
        m.iter()
            .map(|row| {
                row.iter()
                    .map(|w| match *w {
                        W::NegInf => ExtendedReal::NegInf,
                        W::PosInf => ExtendedReal::PosInf,
                        W::Fin(v) => ExtendedReal::int(v),
                    })
                    .collect()
            })
            .collect(),
    )
    .unwrap()
}

fn mul(a: W, b: W) -> W {
    match (a, b) {
        (W::NegInf, _) | (_, W::NegInf) => W::NegInf,
        (W::PosInf, _) | (_, W::PosInf) => W::PosInf,
        (W::Fin(x), W::Fin(y)) => W::Fin(x + y),
    }
}

fn product(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| mul(a[i][k], b[k][j])).max().unwrap_or(W::NegInf))
                .collect()
        })
        .collect()
}

/// `reach[u][v]`: `v` is reachable from `u` by a walk of length >= 0.
fn reachability(a: &IntMatrix) -> Vec<Vec<bool>> {
    let n = a.len();
    let mut reach = vec![vec![false; n]; n];
    for (u, row) in reach.iter_mut().enumerate() {
        let mut stack = vec![u];
        row[u] = true;
        while let Some(x) = stack.pop() {
            for (y, seen) in row.iter_mut().enumerate() {
                // arc x -> y is entry (y, x)
                if !*seen && a[y][x] != W::NegInf {
                    *seen = true;
                    stack.push(y);
                }
            }
        }
    }
    reach
}

/// Kleene plus by brute force: walks of length 1..=n, plus `+inf` wherever a
/// walk can pass a positive closed walk or an infinite arc.
pub fn brute_plus(a: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let mut powers = vec![a.clone()];
    for _ in 1..n {
        let next = product(powers.last().unwrap(), a);
        powers.push(next);
    }
    let hot: Vec<bool> = (0..n)
        .map(|v| powers.iter().any(|p| p[v][v] > W::Fin(0)))
        .collect();
    let reach = reachability(a);
    let mut out = vec![vec![W::NegInf; n]; n];
    for i in 0..n {
        for j in 0..n {
            let through_hot = (0..n).any(|v| hot[v] && reach[j][v] && reach[v][i]);
            let through_inf = (0..n).any(|u| {
                (0..n).any(|v| a[v][u] == W::PosInf && reach[j][u] && reach[v][i])
            });
            out[i][j] = if through_hot || through_inf {
                W::PosInf
            } else {
                powers.iter().map(|p| p[i][j]).max().unwrap()
            };
        }
    }
    out
}

pub fn brute_star(a: &IntMatrix) -> IntMatrix {
    let mut out = brute_plus(a);
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = row[i].max(W::Fin(0));
    }
    out
}

/// Every simple circuit of the finite arcs, each listed once from its least
/// node, with its weight.
pub fn simple_circuits(a: &IntMatrix) -> Vec<(Vec<usize>, i64)> {
    fn walk(a: &IntMatrix, start: usize, path: &mut Vec<usize>, weight: i64, out: &mut Vec<(Vec<usize>, i64)>) {
        let last = *path.last().unwrap();
        for next in start..a.len() {
            let W::Fin(w) = a[next][last] else { continue };
            if next == start {
                out.push((path.clone(), weight + w));
            } else if !path.contains(&next) {
                path.push(next);
                walk(a, start, path, weight + w, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..a.len() {
        walk(a, s, &mut vec![s], 0, &mut out);
    }
    out
}

pub fn brute_positive_circuit(a: &IntMatrix) -> Option<(Vec<usize>, i64)> {
    simple_circuits(a).into_iter().find(|(_, w)| *w > 0)
}

/// The top-left `n x n` block.
pub fn top_left(m: &MaxPlusMatrix, n: usize) -> MaxPlusMatrix {
    m.block(0, 0, n)
}

/// Truncation of the periodic graph of `g` to shifts `1..=k`, built from the
/// definition (arcs `L` go down one shift, `R` up one).
pub fn brute_truncation(g: &StaticGraph, k: usize) -> IntMatrix {
    let n = g.n();
    let (l, c, r) = (to_int(g.l()), to_int(g.c()), to_int(g.r()));
    let mut m = vec![vec![W::NegInf; k * n]; k * n];
    for s in 0..k {
        for i in 0..n {
            for j in 0..n {
                m[s * n + i][s * n + j] = c[i][j];
                if s + 1 < k {
                    m[s * n + i][(s + 1) * n + j] = l[i][j];
                    m[(s + 1) * n + i][s * n + j] = r[i][j];
                }
            }
        }
    }
    m
}

/// Feasibility of a system of difference constraints `x[to] >= x[from] + w`
/// by Bellman-Ford from all-zero potentials.
pub fn difference_feasible(vars: usize, constraints: &[(usize, usize, i64)]) -> bool {
    let mut dist = vec![0i64; vars];
    for _ in 0..=vars {
        let mut changed = false;
        for &(from, to, w) in constraints {
            // x_from <= x_to - w: relax the arc to -> from of weight -w
            if dist[to] - w < dist[from] {
                dist[from] = dist[to] - w;
                changed = true;
            }
        }
        if !changed {
            return true;
        }
    }
    false
}

fn as_i64(r: &pteg_core::Rational) -> i64 {
    assert!(r.is_integer(), "oracle expects integer windows");
    r.to_integer().to_i64().unwrap()
}

/// Whether the first firings of `net` admit a schedule, written straight
/// from the places. `horizon[i]` is the number of firings of transition `i`
/// taken into account; constraints touching later firings are dropped.
pub fn prefix_feasible_with(net: &Pteg, semantics: Semantics, horizon: &[usize]) -> bool {
    let mut index = HashMap::new();
    for (i, &h) in horizon.iter().enumerate() {
        for k in 1..=h {
            let next = index.len();
            index.insert((i, k), next);
        }
    }
    let t0 = index.len();
    let vars = t0 + 1;
    let mut cons = Vec::new();
    let var = |i: usize, k: usize| index.get(&(i, k)).copied();
    for (i, &h) in horizon.iter().enumerate() {
        for k in 1..h {
            cons.push((var(i, k).unwrap(), var(i, k + 1).unwrap(), 0));
        }
    }
    for p in net.places() {
        let m = p.tokens as usize;
        let lb = as_i64(p.interval.lower());
        let ub = p.interval.upper().map(as_i64);
        for k in 1..=horizon[p.from] {
            let (Some(src), Some(dst)) = (var(p.from, k), var(p.to, k + m)) else { continue };
            cons.push((src, dst, lb));
            if let Some(ub) = ub {
                cons.push((dst, src, -ub));
            }
        }
        if semantics == Semantics::Strict {
            for k in 1..=m {
                let Some(dst) = var(p.to, k) else { continue };
                cons.push((t0, dst, lb));
                if let Some(ub) = ub {
                    cons.push((dst, t0, -ub));
                }
            }
        }
    }
    if semantics == Semantics::Strict {
        for i in 0..net.n() {
            if let Some(first) = var(i, 1) {
                cons.push((t0, first, 0));
            }
        }
    }
    difference_feasible(vars, &cons)
}

pub fn prefix_feasible(net: &Pteg, semantics: Semantics, k: usize) -> bool {
    prefix_feasible_with(net, semantics, &vec![k; net.n()])
}

/// Firing horizons of the normalized net equivalent to `k` firings of the
/// original: a chain transition `l` links before the end of its chain only
/// carries firings fixed by original firings `<= k`.
pub fn normalized_horizon(net: &Pteg, normalized: &Pteg, k: usize) -> Vec<usize> {
    let mut horizon = vec![k; normalized.n()];
    let mut next = net.n();
    for p in net.places() {
        let m = p.tokens as usize;
        for link in 1..m {
            let lag = m - link;
            horizon[next] = k.saturating_sub(lag);
            next += 1;
        }
    }
    assert_eq!(next, normalized.n());
    horizon
}

/// A random square integer matrix; each entry is an arc with probability
/// `density`.
pub fn int_matrix(n: usize, lo: i64, hi: i64, density: f64) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(
        proptest::collection::vec(
            (proptest::bool::weighted(density), lo..=hi).prop_map(|(arc, w)| if arc { W::Fin(w) } else { W::NegInf }),
            n,
        ),
        n,
    )
}

pub fn sized_matrix(max_n: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_n).prop_flat_map(move |n| int_matrix(n, lo, hi, 0.5))
}

pub fn static_graph(max_n: usize, lo: i64, hi: i64) -> impl Strategy<Value = StaticGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        (int_matrix(n, lo, hi, 0.4), int_matrix(n, lo, hi, 0.4), int_matrix(n, lo, hi, 0.4)).prop_map(
            |(l, c, r)| StaticGraph::new(from_int(&l), from_int(&c), from_int(&r)).unwrap(),
        )
    })
}

/// A random place: tokens in `tokens`, integer window inside `[0, 6]`.
pub fn place(n: usize, tokens: std::ops::RangeInclusive<u32>) -> impl Strategy<Value = Place> {
    (0..n, 0..n, tokens, 0i64..=4, proptest::option::weighted(0.8, 0i64..=3)).prop_map(
        |(from, to, tokens, lb, width)| {
            let interval = match width {
                Some(w) => Interval::closed(int(lb), int(lb + w)).unwrap(),
                None => Interval::at_least(int(lb)).unwrap(),
            };
            Place::new(from, to, tokens, interval)
        },
    )
}

/// A random net with at most one token per place.
pub fn net(max_n: usize, max_places: usize) -> impl Strategy<Value = Pteg> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(place(n, 0..=1), 0..=max_places)
            .prop_map(move |places| Pteg::with_count(n, places).unwrap())
    })
}

/// A random net that also contains one place holding two or three tokens.
pub fn net_with_multi_token_place(max_n: usize, max_places: usize) -> impl Strategy<Value = Pteg> {
    (1..=max_n).prop_flat_map(move |n| {
        (proptest::collection::vec(place(n, 0..=1), 0..max_places), place(n, 2..=3), any::<proptest::sample::Index>())
            .prop_map(move |(mut places, multi, at)| {
                let pos = at.index(places.len() + 1);
                places.insert(pos, multi);
                Pteg::with_count(n, places).unwrap()
            })
    })
}

/// A net whose windows are built around a periodic schedule
/// `x_i(k) = a_i + period * k`, so it is consistent under loose semantics.
pub fn scheduled_net(n: usize, places: usize, rng: &mut impl rand::Rng) -> Pteg {
    let period = rng.gen_range(5..=10i64);
    let offsets: Vec<i64> = (0..n).map(|_| rng.gen_range(0..period)).collect();
    let mut out = Vec::with_capacity(places);
    while out.len() < places {
        let (from, to) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let tokens = rng.gen_range(0..=1u32);
        let gap = offsets[to] + period * tokens as i64 - offsets[from];
        if gap < 0 {
            continue;
        }
        let lb = rng.gen_range(0..=gap);
        let ub = gap + rng.gen_range(0..=3);
        out.push(Place::new(from, to, tokens, Interval::closed(int(lb), int(ub)).unwrap()));
    }
    Pteg::with_count(n, out).unwrap()
}

// Seeded generators for the acceptance corpus.

pub fn random_int_matrix(n: usize, lo: i64, hi: i64, density: f64, rng: &mut impl rand::Rng) -> IntMatrix {
    (0..n)
        .map(|_| {
            (0..n)
                .map(|_| if rng.gen_bool(density) { W::Fin(rng.gen_range(lo..=hi)) } else { W::NegInf })
                .collect()
        })
        .collect()
}

pub fn random_static_graph(max_n: usize, lo: i64, hi: i64, rng: &mut impl rand::Rng) -> StaticGraph {
    let n = rng.gen_range(1..=max_n);
    let mut part = || from_int(&random_int_matrix(n, lo, hi, 0.4, rng));
    let (l, c, r) = (part(), part(), part());
    StaticGraph::new(l, c, r).unwrap()
}

pub fn random_place(n: usize, tokens: u32, rng: &mut impl rand::Rng) -> Place {
    let lb = rng.gen_range(0..=4i64);
    let interval = if rng.gen_bool(0.8) {
        Interval::closed(int(lb), int(lb + rng.gen_range(0..=3))).unwrap()
    } else {
        Interval::at_least(int(lb)).unwrap()
    };
    Place::new(rng.gen_range(0..n), rng.gen_range(0..n), tokens, interval)
}

/// A random net with one place holding two or three tokens among places
/// holding at most one.
pub fn random_multi_token_net(max_n: usize, max_places: usize, rng: &mut impl rand::Rng) -> Pteg {
    let n = rng.gen_range(1..=max_n);
    let count = rng.gen_range(0..max_places);
    let mut places: Vec<Place> = (0..count).map(|_| random_place(n, rng.gen_range(0..=1), rng)).collect();
    let multi = random_place(n, rng.gen_range(2..=3), rng);
    places.insert(rng.gen_range(0..=places.len()), multi);
    Pteg::with_count(n, places).unwrap()
}

/// A net with `places` random places over `n` transitions.
pub fn random_net(n: usize, places: usize, rng: &mut impl rand::Rng) -> Pteg {
    let places = (0..places).map(|_| random_place(n, rng.gen_range(0..=1), rng)).collect();
    Pteg::with_count(n, places).unwrap()
}
