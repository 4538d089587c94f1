use std::collections::HashSet;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// A residence-time window `[lower, upper]`; `upper = None` means unbounded.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lower: Rational,
    upper: Option<Rational>,
}

impl Interval {
    pub fn new(lower: Rational, upper: Option<Rational>) -> Result<Self> {
        let invalid = |reason| Error::InvalidInterval {
            lower: format_rational(&lower),
            upper: upper.as_ref().map_or_else(|| "inf".to_string(), format_rational),
            reason,
        };
        if lower < Rational::zero() {
            return Err(invalid("lower bound is negative"));
        }
        if matches!(&upper, Some(u) if *u < lower) {
            return Err(invalid("lower bound exceeds upper bound"));
        }
        Ok(Interval { lower, upper })
    }

    pub fn closed(lower: Rational, upper: Rational) -> Result<Self> {
        Self::new(lower, Some(upper))
    }

    pub fn at_least(lower: Rational) -> Result<Self> {
        Self::new(lower, None)
    }

    /// `[0, 0]`.
    pub fn zero() -> Self {
        Interval {
            lower: Rational::zero(),
            upper: Some(Rational::zero()),
        }
    }

    pub fn lower(&self) -> &Rational {
        &self.lower
    }

    pub fn upper(&self) -> Option<&Rational> {
        self.upper.as_ref()
    }

    pub fn contains(&self, v: &Rational) -> bool {
        *v >= self.lower && self.upper.as_ref().is_none_or(|u| v <= u)
    }

    /// The common part of both windows, or `None` if they are disjoint.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lower = self.lower.clone().max(other.lower.clone());
        let upper = match (&self.upper, &other.upper) {
            (Some(a), Some(b)) => Some(a.min(b).clone()),
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        };
        Interval::new(lower, upper).ok()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.upper {
            Some(u) => write!(f, "[{}, {}]", format_rational(&self.lower), format_rational(u)),
            None => write!(f, "[{}, inf)", format_rational(&self.lower)),
        }
    }
}

/// A place of the event graph: tokens flow from transition `from` to `to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Place {
    pub from: usize,
    pub to: usize,
    pub tokens: u32,
    pub interval: Interval,
    pub name: Option<String>,
}

impl Place {
    pub fn new(from: usize, to: usize, tokens: u32, interval: Interval) -> Self {
        Place {
            from,
            to,
            tokens,
            interval,
            name: None,
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }
}

/// A P-time event graph. Transition indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pteg {
    transitions: Vec<String>,
    places: Vec<Place>,
}

impl Pteg {
    pub fn new(transitions: Vec<String>, places: Vec<Place>) -> Result<Self> {
        if transitions.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        let mut seen = HashSet::new();
        for t in &transitions {
            if !seen.insert(t.as_str()) {
                return Err(Error::DuplicateTransition(t.clone()));
            }
        }
        let count = transitions.len();
        for (place, p) in places.iter().enumerate() {
            for index in [p.from, p.to] {
                if index >= count {
                    return Err(Error::TransitionOutOfRange {
                        place,
                        index,
                        count,
                    });
                }
            }
        }
        Ok(Pteg {
            transitions,
            places,
        })
    }

    /// A net whose transitions are labelled `t1..tn`.
    pub fn with_count(n: usize, places: Vec<Place>) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("t{i}")).collect(), places)
    }

    pub fn n(&self) -> usize {
        self.transitions.len()
    }

    pub fn transitions(&self) -> &[String] {
        &self.transitions
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.transitions.iter().position(|t| t == label)
    }

    pub fn is_normalized(&self) -> bool {
        self.places.iter().all(|p| p.tokens <= 1)
    }

    /// Number of transitions [`normalize_marking`](Self::normalize_marking) adds.
    pub fn extra_transitions(&self) -> usize {
        self.places
            .iter()
            .map(|p| (p.tokens as usize).saturating_sub(1))
            .sum()
    }

    /// An equivalent net in which every place holds at most one token.
    ///
    /// A place from `t_j` to `t_i` with `m >= 2` tokens and window `I` becomes
    /// a chain `t_j -> u_1 -> ... -> u_{m-1} -> t_i` of one-token places; all
    /// links have window `[0, 0]` except the last, which keeps `I`. Original
    /// transitions keep their indices; the `u`s are appended.
    pub fn normalize_marking(&self) -> Pteg {
        let mut transitions = self.transitions.clone();
        let mut taken: HashSet<String> = transitions.iter().cloned().collect();
        let mut places = Vec::with_capacity(self.places.len() + self.extra_transitions());
        for (index, p) in self.places.iter().enumerate() {
            if p.tokens <= 1 {
                places.push(p.clone());
                continue;
            }
            let stem = p.name.clone().unwrap_or_else(|| format!("p{}", index + 1));
            let mut prev = p.from;
            for k in 1..p.tokens {
                let mut label = format!("{stem}.u{k}");
                while taken.contains(&label) {
                    label.push('\'');
                }
                taken.insert(label.clone());
                transitions.push(label);
                let u = transitions.len() - 1;
                places.push(Place {
                    from: prev,
                    to: u,
                    tokens: 1,
                    interval: Interval::zero(),
                    name: Some(format!("{stem}.{k}")),
                });
                prev = u;
            }
            places.push(Place {
                from: prev,
                to: p.to,
                tokens: 1,
                interval: p.interval.clone(),
                name: Some(format!("{stem}.{}", p.tokens)),
            });
        }
        Pteg {
            transitions,
            places,
        }
    }
}
