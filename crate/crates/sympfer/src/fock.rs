//! Fermionic Fock spaces for the symplectic fermion pair system: monomial
//! states, exact linear combinations, mode actions and graded bases.
//!
//! Modes are stored doubled so that half-integers in the twisted sector stay
//! exact integers. Untwisted states live over |0> (all doubled modes even),
//! twisted states over |theta> (all doubled modes odd).

use crate::rat::{rat_half, rat_int, rat_parse, rat_text, Rat};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Sector {
    Untwisted,
    Twisted,
}

/// Generator species: e is symplectic-dual to f, with <e,f> = -1, <f,e> = 1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Kind {
    E,
    F,
}

/// One mode operator gen^color_(doubled/2).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Op {
    pub kind: Kind,
    pub color: u8,
    pub doubled: i64,
}

impl Op {
    pub fn new(kind: Kind, color: u8, doubled: i64) -> Self {
        Op { kind, color, doubled }
    }

    pub fn is_creation(&self) -> bool {
        self.doubled < 0
    }

    /// Position key in the canonical left-to-right display: largest |mode|
    /// first, then color, then e before f. For creation modes |doubled| is
    /// -doubled, so ascending doubled gives descending |mode|.
    fn order_key(&self) -> (i64, u8, Kind) {
        (self.doubled, self.color, self.kind)
    }

    /// <self's field, other's field>, the symplectic pairing.
    pub fn pairing(&self, other: &Op) -> i64 {
        if self.color != other.color {
            return 0;
        }
        match (self.kind, other.kind) {
            (Kind::E, Kind::F) => -1,
            (Kind::F, Kind::E) => 1,
            _ => 0,
        }
    }
}

/// A normally ordered product of distinct creation operators over the vacuum
/// of one sector, ops listed in canonical order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Monomial {
    pub sector: Sector,
    pub ops: Vec<Op>,
}

impl Monomial {
    pub fn vacuum(sector: Sector) -> Self {
        Monomial { sector, ops: Vec::new() }
    }

    /// Sum of the conformal weights of the creation modes; the twisted
    /// ground-state shift is not included here.
    pub fn raw_weight_doubled(&self) -> i64 {
        self.ops.iter().map(|o| -o.doubled).sum()
    }

    pub fn raw_weight(&self) -> Rat {
        rat_half(self.raw_weight_doubled())
    }

    /// Fermion parity: 0 for the even subspace, 1 for the odd one.
    pub fn parity(&self) -> u8 {
        (self.ops.len() % 2) as u8
    }

    fn mode_parity_ok(&self) -> bool {
        let want_odd = self.sector == Sector::Twisted;
        self.ops.iter().all(|o| (o.doubled.rem_euclid(2) == 1) == want_odd)
    }
}

/// Exact linear combination of monomials in one sector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct State {
    pub sector: Sector,
    pub terms: BTreeMap<Monomial, Rat>,
}

impl State {
    pub fn zero(sector: Sector) -> Self {
        State { sector, terms: BTreeMap::new() }
    }

    pub fn vacuum(sector: Sector) -> Self {
        State::monomial(Monomial::vacuum(sector))
    }

    pub fn monomial(m: Monomial) -> Self {
        debug_assert!(m.mode_parity_ok());
        let sector = m.sector;
        let mut terms = BTreeMap::new();
        terms.insert(m, rat_int(1));
        State { sector, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        debug_assert_eq!(m.sector, self.sector);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &State) {
        debug_assert_eq!(self.sector, other.sector);
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scaled(&self, r: &Rat) -> State {
        if r.is_zero() {
            return State::zero(self.sector);
        }
        State {
            sector: self.sector,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    pub fn sub_assign(&mut self, other: &State) {
        self.add_assign(&other.scaled(&rat_int(-1)));
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Largest |doubled mode| appearing among creation operators; bounds the
    /// annihilation modes that can act without vanishing.
    pub fn max_abs_doubled(&self) -> i64 {
        self.terms
            .keys()
            .flat_map(|m| m.ops.iter().map(|o| -o.doubled))
            .max()
            .unwrap_or(0)
    }

    /// Apply the single mode operator `op` on the left.
    pub fn apply_op(&self, op: Op) -> State {
        let twisted = self.sector == Sector::Twisted;
        assert_eq!(
            op.doubled.rem_euclid(2) == 1,
            twisted,
            "mode parity must match the sector"
        );
        let mut out = State::zero(self.sector);
        for (m, c) in &self.terms {
            apply_op_monomial(op, m, c, &mut out);
        }
        out
    }

    /// Apply a product of operators, leftmost acting last.
    pub fn apply_ops(&self, ops: &[Op]) -> State {
        let mut cur = self.clone();
        for op in ops.iter().rev() {
            cur = cur.apply_op(*op);
            if cur.is_zero() {
                break;
            }
        }
        cur
    }
}

fn apply_op_monomial(op: Op, m: &Monomial, coeff: &Rat, out: &mut State) {
    if op.is_creation() {
        // insert into canonical position; repeated fermionic operators vanish
        let key = op.order_key();
        let mut pos = 0usize;
        for (i, o) in m.ops.iter().enumerate() {
            if o.order_key() == key {
                return;
            }
            if o.order_key() > key {
                pos = i;
                break;
            }
            pos = i + 1;
        }
        let mut ops = m.ops.clone();
        ops.insert(pos, op);
        let sign = if pos % 2 == 0 { 1 } else { -1 };
        out.add_term(
            Monomial { sector: m.sector, ops },
            coeff * rat_int(sign),
        );
    } else {
        // annihilation (or untwisted zero mode): anticommute through, each
        // matching creator contributes m <phi,psi> with its crossing sign,
        // and the survivor hits the vacuum
        for (i, o) in m.ops.iter().enumerate() {
            if op.doubled + o.doubled != 0 {
                continue;
            }
            let pair = op.pairing(o);
            if pair == 0 {
                continue;
            }
            let mut ops = m.ops.clone();
            ops.remove(i);
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let factor = rat_half(op.doubled) * rat_int(pair) * rat_int(sign);
            out.add_term(Monomial { sector: m.sector, ops }, coeff * factor);
        }
    }
}

/// Normal form of an arbitrary word of mode operators applied to the vacuum.
pub fn normal_form(sector: Sector, ops: &[Op]) -> State {
    State::vacuum(sector).apply_ops(ops)
}

/// All monomials of the given sector, number of colors `d`, parity filter and
/// doubled raw weight, in canonical (BTreeMap key) order.
pub fn grade_basis(
    sector: Sector,
    d: u8,
    parity: Option<u8>,
    weight_doubled: i64,
) -> Vec<Monomial> {
    assert!(weight_doubled >= 0);
    let step = if sector == Sector::Twisted { 1 } else { 2 };
    let mut acc = Vec::new();
    let mut stack: Vec<Op> = Vec::new();
    // enumerate strictly increasing sequences under order_key, smallest
    // |mode| outward, then reverse into canonical display order
    fn rec(
        sector: Sector,
        d: u8,
        step: i64,
        remaining: i64,
        min_next: Option<(i64, u8, Kind)>,
        stack: &mut Vec<Op>,
        acc: &mut Vec<Monomial>,
    ) {
        if remaining == 0 {
            let mut ops = stack.clone();
            ops.reverse();
            acc.push(Monomial { sector, ops });
            return;
        }
        // twisted modes are half-odd, untwisted ones integral: |doubled|
        // starts at `step` and always advances by 2
        let mut mag = step;
        while mag <= remaining {
            for color in 0..d {
                for kind in [Kind::E, Kind::F] {
                    let op = Op::new(kind, color, -mag);
                    if let Some(prev) = min_next {
                        if op.order_key() >= prev {
                            continue;
                        }
                    }
                    stack.push(op);
                    rec(sector, d, step, remaining - mag, Some(op.order_key()), stack, acc);
                    stack.pop();
                }
            }
            mag += 2;
        }
    }
    rec(sector, d, step, weight_doubled, None, &mut stack, &mut acc);
    acc.retain(|m| parity.map_or(true, |p| m.parity() == p));
    acc.sort();
    acc
}

fn mode_text(doubled: i64) -> String {
    if doubled % 2 == 0 {
        format!("{}", doubled / 2)
    } else {
        format!("{}/2", doubled)
    }
}

impl fmt::Display for Op {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = match self.kind {
            Kind::E => "e",
            Kind::F => "f",
        };
        if self.color == 0 {
            write!(fm, "{}({})", g, mode_text(self.doubled))
        } else {
            write!(fm, "{}{}({})", g, self.color + 1, mode_text(self.doubled))
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.ops {
            write!(fm, "{} ", op)?;
        }
        match self.sector {
            Sector::Untwisted => write!(fm, "|0>"),
            Sector::Twisted => write!(fm, "|theta>"),
        }
    }
}

impl fmt::Display for State {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(fm, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(fm, " + ")?;
            }
            write!(fm, "{} {}", rat_text(c), m)?;
        }
        Ok(())
    }
}

/// Parse the canonical monomial text form, e.g. "e(-3/2) f(-1/2) |theta>".
pub fn parse_monomial(s: &str) -> Result<Monomial, String> {
    let s = s.trim();
    let (body, sector) = if let Some(b) = s.strip_suffix("|theta>") {
        (b, Sector::Twisted)
    } else if let Some(b) = s.strip_suffix("|0>") {
        (b, Sector::Untwisted)
    } else {
        return Err(format!("missing vacuum symbol in {s:?}"));
    };
    let mut ops = Vec::new();
    for tok in body.split_whitespace() {
        let open = tok.find('(').ok_or_else(|| format!("bad operator {tok:?}"))?;
        if !tok.ends_with(')') {
            return Err(format!("bad operator {tok:?}"));
        }
        let (name, rest) = tok.split_at(open);
        let inner = &rest[1..rest.len() - 1];
        let (kind, color_txt) = match name.chars().next() {
            Some('e') => (Kind::E, &name[1..]),
            Some('f') => (Kind::F, &name[1..]),
            _ => return Err(format!("bad generator {name:?}")),
        };
        let color: u8 = if color_txt.is_empty() {
            0
        } else {
            color_txt
                .parse::<u8>()
                .map_err(|_| format!("bad color in {tok:?}"))?
                .checked_sub(1)
                .ok_or_else(|| format!("bad color in {tok:?}"))?
        };
        let mode = rat_parse(inner).ok_or_else(|| format!("bad mode in {tok:?}"))?;
        let doubled_rat = &mode * rat_int(2);
        if !doubled_rat.is_integer() {
            return Err(format!("mode not a half-integer in {tok:?}"));
        }
        let doubled = i64::try_from(doubled_rat.to_integer())
            .map_err(|_| format!("mode out of range in {tok:?}"))?;
        ops.push(Op::new(kind, color, doubled));
    }
    let m = Monomial { sector, ops };
    if !m.mode_parity_ok() {
        return Err(format!("mode parity does not match sector in {s:?}"));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn e(doubled: i64) -> Op {
        Op::new(Kind::E, 0, doubled)
    }
    fn f(doubled: i64) -> Op {
        Op::new(Kind::F, 0, doubled)
    }

    #[test]
    fn creation_anticommutes() {
        let v = State::vacuum(Sector::Untwisted);
        let ef = v.apply_ops(&[e(-2), f(-2)]);
        let fe = v.apply_ops(&[f(-2), e(-2)]);
        assert_eq!(ef, fe.scaled(&rat_int(-1)));
        assert!(v.apply_ops(&[e(-2), e(-2)]).is_zero());
    }

    #[test]
    fn canonical_order_display() {
        let v = State::vacuum(Sector::Twisted);
        let st = v.apply_ops(&[e(-3), f(-1)]);
        let m = st.terms.keys().next().unwrap();
        assert_eq!(m.to_string(), "e(-3/2) f(-1/2) |theta>");
        assert_eq!(st.coeff(m), rat_int(1));
        // swapped application order picks up the crossing sign
        let st2 = v.apply_ops(&[f(-1), e(-3)]);
        assert_eq!(st2.coeff(m), rat_int(-1));
    }

    #[test]
    fn contraction_values() {
        // e_(1/2) f_(-1/2) |theta> = (1/2) <e,f> |theta> = -1/2 |theta>
        let v = State::vacuum(Sector::Twisted);
        let st = v.apply_op(f(-1)).apply_op(e(1));
        assert_eq!(st.coeff(&Monomial::vacuum(Sector::Twisted)), rat(-1, 2));
        // f_(1) e_(-1) |0> = 1 * <f,e> |0> = |0>
        let u = State::vacuum(Sector::Untwisted);
        let st = u.apply_op(e(-2)).apply_op(f(2));
        assert_eq!(st.coeff(&Monomial::vacuum(Sector::Untwisted)), rat_int(1));
        // same-species contraction vanishes
        assert!(u.apply_op(e(-2)).apply_op(e(2)).is_zero());
    }

    #[test]
    fn annihilator_crosses_with_sign() {
        // f_(1) e_(-2) e_(-1) |0>: f_(1) crosses e_(-2) before contracting
        // with e_(-1), so the survivor e_(-2)|0> carries a minus sign
        let u = State::vacuum(Sector::Untwisted);
        let st = u.apply_ops(&[f(2), e(-4), e(-2)]);
        let survivor = u.apply_op(e(-4));
        let key = survivor.terms.keys().next().unwrap();
        assert_eq!(st.coeff(key), rat_int(-1));
        // in the other factor order the two signs cancel
        let st2 = u.apply_ops(&[f(2), e(-2), e(-4)]);
        assert_eq!(st2.coeff(key), rat_int(1));
    }

    #[test]
    fn zero_mode_kills_untwisted() {
        let u = State::vacuum(Sector::Untwisted);
        assert!(u.apply_op(e(0)).is_zero());
        assert!(u.apply_ops(&[f(0), e(-2), f(-4)]).is_zero());
    }

    #[test]
    fn grade_basis_counts_d1() {
        // untwisted weight 0: |0> only; weight 1: e(-1), f(-1); weight 2:
        // e(-2), f(-2), e(-1)f(-1)
        assert_eq!(grade_basis(Sector::Untwisted, 1, None, 0).len(), 1);
        assert_eq!(grade_basis(Sector::Untwisted, 1, None, 2).len(), 2);
        assert_eq!(grade_basis(Sector::Untwisted, 1, None, 4).len(), 3);
        assert_eq!(grade_basis(Sector::Untwisted, 1, Some(0), 4).len(), 1);
        // twisted raw weight 1/2: e(-1/2), f(-1/2); raw weight 1: e f both
        // at -1/2
        assert_eq!(grade_basis(Sector::Twisted, 1, None, 1).len(), 2);
        assert_eq!(grade_basis(Sector::Twisted, 1, None, 2).len(), 1);
        assert_eq!(grade_basis(Sector::Twisted, 1, None, 3).len(), 2);
    }

    #[test]
    fn grade_basis_generating_function_oracle() {
        // graded dimension of the full untwisted Fock space at d colors is
        // prod_{n>=1} (1+q^n)^{2d}; compare coefficients by convolution
        for d in 1..=2u8 {
            let n_max = 8usize;
            let mut gf = vec![0i64; n_max + 1];
            gf[0] = 1;
            for n in 1..=n_max {
                for _ in 0..(2 * d) {
                    let mut next = gf.clone();
                    for (i, v) in gf.iter().enumerate() {
                        if i + n <= n_max {
                            next[i + n] += v;
                        }
                    }
                    gf = next;
                }
            }
            for w in 0..=n_max {
                let got = grade_basis(Sector::Untwisted, d, None, 2 * w as i64).len();
                assert_eq!(got as i64, gf[w], "d={d} w={w}");
            }
        }
    }

    #[test]
    fn parse_roundtrip() {
        for s in [
            "|0>",
            "|theta>",
            "e(-3/2) f(-1/2) |theta>",
            "e(-2) e(-1) f(-1) |0>",
        ] {
            let m = parse_monomial(s).unwrap();
            assert_eq!(m.to_string(), s);
        }
        let m = parse_monomial("e2(-1) f(-1) |0>").unwrap();
        assert_eq!(m.ops[0].color, 1);
        assert!(parse_monomial("e(-1) |theta>").is_err());
        assert!(parse_monomial("e(-1)").is_err());
    }

    #[test]
    fn weights_and_parity() {
        let m = parse_monomial("e(-3/2) f(-1/2) |theta>").unwrap();
        assert_eq!(m.raw_weight(), rat_int(2));
        assert_eq!(m.parity(), 0);
        let m = parse_monomial("e(-1) |0>").unwrap();
        assert_eq!(m.raw_weight(), rat_int(1));
        assert_eq!(m.parity(), 1);
    }
}
