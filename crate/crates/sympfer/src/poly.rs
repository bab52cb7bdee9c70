//! Sparse multivariate polynomials over the rationals in the three formal
//! variables `a`, `b`, `c`.

use crate::rat::{rat_int, rat_text, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type Exp = [u32; 3];

/// Polynomial in Q[a, b, c]; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PolyQ {
    terms: BTreeMap<Exp, Rat>,
}

pub const VAR_A: usize = 0;
pub const VAR_B: usize = 1;
pub const VAR_C: usize = 2;

impl PolyQ {
    pub fn zero() -> Self {
        PolyQ::default()
    }

    pub fn one() -> Self {
        PolyQ::constant(Rat::one())
    }

    pub fn constant(r: Rat) -> Self {
        let mut p = PolyQ::default();
        if !r.is_zero() {
            p.terms.insert([0, 0, 0], r);
        }
        p
    }

    pub fn var(which: usize) -> Self {
        let mut e = [0u32; 3];
        e[which] = 1;
        let mut p = PolyQ::default();
        p.terms.insert(e, Rat::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, e: Exp, r: Rat) {
        if r.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rat::zero);
        *entry += r;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e[0] + e[1] + e[2])
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return PolyQ::zero();
        }
        let mut p = PolyQ::default();
        for (e, c) in &self.terms {
            p.terms.insert(*e, c * r);
        }
        p
    }

    pub fn eval(&self, at: &[Rat; 3]) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &deg) in e.iter().enumerate() {
                for _ in 0..deg {
                    t *= &at[v];
                }
            }
            acc += t;
        }
        acc
    }

    /// Leading term under graded lex with a > b > c.
    fn leading(&self) -> Option<(Exp, &Rat)> {
        self.terms
            .iter()
            .max_by_key(|(e, _)| (e[0] + e[1] + e[2], e[0], e[1], e[2]))
            .map(|(e, c)| (*e, c))
    }

    /// Exact division; `None` if the divisor does not divide evenly.
    pub fn div_exact(&self, divisor: &PolyQ) -> Option<PolyQ> {
        let (de, dc) = divisor.leading()?;
        let mut rem = self.clone();
        let mut quot = PolyQ::zero();
        while let Some((re, rc)) = rem.leading() {
            if re[0] < de[0] || re[1] < de[1] || re[2] < de[2] {
                return None;
            }
            let qe = [re[0] - de[0], re[1] - de[1], re[2] - de[2]];
            let qc = rc / dc;
            let mut t = PolyQ::zero();
            t.terms.insert(qe, qc.clone());
            quot.add_term(qe, qc);
            rem = &rem - &(&t * divisor);
        }
        Some(quot)
    }

    /// binom(self + shift, k) as a polynomial: the falling-factorial product
    /// (x)(x-1)...(x-k+1)/k! with x = self.
    pub fn binomial(&self, k: u32) -> PolyQ {
        let mut acc = PolyQ::one();
        let mut fact = Rat::one();
        for j in 0..k {
            acc = &acc * &(self - &PolyQ::constant(rat_int(j as i64)));
            if j > 0 {
                fact *= rat_int((j + 1) as i64);
            }
        }
        acc.scale(&(Rat::one() / fact))
    }

    /// Terms in graded-lex order (a > b > c), highest first; used for
    /// deterministic printing.
    pub fn sorted_terms(&self) -> Vec<(Exp, Rat)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
        v.sort_by_key(|(e, _)| {
            (
                std::cmp::Reverse(e[0] + e[1] + e[2]),
                std::cmp::Reverse(e[0]),
                std::cmp::Reverse(e[1]),
                std::cmp::Reverse(e[2]),
            )
        });
        v
    }
}

impl Add for &PolyQ {
    type Output = PolyQ;
    fn add(self, rhs: &PolyQ) -> PolyQ {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &PolyQ {
    type Output = PolyQ;
    fn sub(self, rhs: &PolyQ) -> PolyQ {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        self.scale(&rat_int(-1))
    }
}

impl Mul for &PolyQ {
    type Output = PolyQ;
    fn mul(self, rhs: &PolyQ) -> PolyQ {
        let mut out = PolyQ::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["a", "b", "c"];
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mut mono = String::new();
            for (v, &deg) in e.iter().enumerate() {
                if deg == 1 {
                    mono.push_str(names[v]);
                } else if deg > 1 {
                    mono.push_str(&format!("{}^{}", names[v], deg));
                }
            }
            if mono.is_empty() {
                write!(f, "{}", rat_text(&c))?;
            } else if c == Rat::one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{}", rat_text(&c), mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
