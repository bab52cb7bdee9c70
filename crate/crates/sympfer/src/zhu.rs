//! Zhu-algebra products, O(M) subspaces, lowest-weight spaces, and
//! machine certificates for the generator propositions.
//!
//! All quotient statements are certified one-sidedly: the computed span
//! O_W(M) is a subspace of O(M), so "reduces to zero mod O_W" is a sound
//! membership certificate and never a refutation.

use std::collections::BTreeMap;

use crate::fock::{grade_basis, parse_monomial, Monomial, Sector, State};
use crate::linalg::RowSpace;
use crate::rat::{binom_int, rat, rat_int, Rat};
use crate::vertex::Engine;
use num_traits::Zero;

/// The four simple modules of the even subalgebra at d=1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub enum ModuleTag {
    TPlus,
    TMinus,
    TtPlus,
    TtMinus,
}

impl ModuleTag {
    pub fn all() -> [ModuleTag; 4] {
        [
            ModuleTag::TPlus,
            ModuleTag::TMinus,
            ModuleTag::TtPlus,
            ModuleTag::TtMinus,
        ]
    }

    pub fn name(self) -> &'static str {
        match self {
            ModuleTag::TPlus => "T+",
            ModuleTag::TMinus => "T-",
            ModuleTag::TtPlus => "Tt+",
            ModuleTag::TtMinus => "Tt-",
        }
    }

    pub fn sector(self) -> Sector {
        match self {
            ModuleTag::TPlus | ModuleTag::TMinus => Sector::Untwisted,
            ModuleTag::TtPlus | ModuleTag::TtMinus => Sector::Twisted,
        }
    }

    /// Length parity of basis monomials (0 = even, 1 = odd).
    pub fn parity(self) -> u8 {
        match self {
            ModuleTag::TPlus | ModuleTag::TtPlus => 0,
            ModuleTag::TMinus | ModuleTag::TtMinus => 1,
        }
    }

    /// Conformal weight of the lowest graded piece: 0, 1, -1/8, 3/8.
    pub fn lowest_weight(self) -> Rat {
        match self {
            ModuleTag::TPlus => rat_int(0),
            ModuleTag::TMinus => rat_int(1),
            ModuleTag::TtPlus => rat(-1, 8),
            ModuleTag::TtMinus => rat(3, 8),
        }
    }

    /// Doubled raw weight of the lowest graded piece.
    pub fn lowest_raw_doubled(self) -> i64 {
        match self {
            ModuleTag::TPlus | ModuleTag::TtPlus => 0,
            ModuleTag::TMinus => 2,
            ModuleTag::TtMinus => 1,
        }
    }

    /// Conformal-weight ground energy of the sector.
    pub fn ground_energy(self) -> Rat {
        match self.sector() {
            Sector::Untwisted => rat_int(0),
            Sector::Twisted => rat(-1, 8),
        }
    }
}

/// Ordered monomial basis of a module, truncated at a doubled raw weight.
#[derive(Debug, Clone)]
pub struct ModuleBasis {
    pub tag: ModuleTag,
    pub w_doubled: i64,
    pub monos: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
}

impl ModuleBasis {
    pub fn build(d: u8, tag: ModuleTag, w_doubled: i64) -> ModuleBasis {
        let mut monos = Vec::new();
        let step = if tag.sector() == Sector::Twisted { 1 } else { 2 };
        let mut w = 0;
        while w <= w_doubled {
            monos.extend(grade_basis(tag.sector(), d, Some(tag.parity()), w));
            w += step;
        }
        let index = monos
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        ModuleBasis {
            tag,
            w_doubled,
            monos,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.monos.len()
    }

    /// Flatten a state into coordinates; None if any monomial exceeds the cutoff.
    pub fn flatten(&self, s: &State) -> Option<Vec<Rat>> {
        let mut v = vec![Rat::zero(); self.monos.len()];
        for (m, c) in s.terms.iter() {
            let i = *self.index.get(m)?;
            v[i] = c.clone();
        }
        Some(v)
    }

    /// Basis of the lowest graded piece Omega(M).
    pub fn omega_basis(&self) -> Vec<Monomial> {
        let w = self.tag.lowest_raw_doubled();
        self.monos
            .iter()
            .filter(|m| m.raw_weight_doubled() == w)
            .cloned()
            .collect()
    }
}

/// Zhu product and quotient machinery over a fixed engine and cutoff.
pub struct ZhuContext {
    pub engine: Engine,
    pub w_doubled: i64,
}

/// Largest doubled raw weight among the monomials of a state (0 for zero).
pub fn max_raw_doubled(s: &State) -> i64 {
    s.terms
        .iter()
        .map(|(m, _)| m.raw_weight_doubled())
        .max()
        .unwrap_or(0)
}

/// Split into homogeneous components keyed by doubled raw weight.
pub fn split_homogeneous(s: &State) -> BTreeMap<i64, State> {
    let mut out: BTreeMap<i64, State> = BTreeMap::new();
    for (m, c) in s.terms.iter() {
        out.entry(m.raw_weight_doubled())
            .or_insert_with(|| State::zero(s.sector))
            .add_term(m.clone(), c.clone());
    }
    out
}

impl ZhuContext {
    pub fn new(d: u8, w_doubled: i64) -> ZhuContext {
        ZhuContext {
            engine: Engine::new(d),
            w_doubled,
        }
    }

    fn st(s: &str) -> State {
        State::monomial(parse_monomial(s).expect("builtin monomial"))
    }

    /// The strong generators omega, E, H, F of the even subalgebra.
    pub fn strong_generators(&self) -> Vec<(&'static str, State)> {
        let mut h = Self::st("e(-2) f(-1) |0>").scaled(&rat(1, 2));
        h.add_assign(&Self::st("f(-2) e(-1) |0>").scaled(&rat(-1, 2)));
        vec![
            ("omega", self.engine.omega()),
            ("E", Self::st("e(-2) e(-1) |0>")),
            ("H", h),
            ("F", Self::st("f(-2) f(-1) |0>")),
        ]
    }

    /// a * u = sum_i binom(|a|, i) a_(i-1) u, extended linearly over the
    /// homogeneous components of a. Requires untwisted a of integer weight.
    pub fn star_left(&self, a: &State, u: &State) -> State {
        let mut out = State::zero(u.sector);
        for (w2, comp) in split_homogeneous(a) {
            assert!(w2 % 2 == 0, "star requires integer-weight a");
            let wt = w2 / 2;
            for i in 0..=wt {
                out.add_assign(
                    &self
                        .engine
                        .mode(&comp, 2 * (i - 1), u)
                        .scaled(&binom_int(wt, i as u64)),
                );
            }
        }
        out
    }

    /// u * a = sum_i binom(|a|-1, i) a_(i-1) u.
    pub fn star_right(&self, u: &State, a: &State) -> State {
        let mut out = State::zero(u.sector);
        for (w2, comp) in split_homogeneous(a) {
            assert!(w2 % 2 == 0, "star requires integer-weight a");
            let wt = w2 / 2;
            for i in 0..wt.max(1) {
                out.add_assign(
                    &self
                        .engine
                        .mode(&comp, 2 * (i - 1), u)
                        .scaled(&binom_int((wt - 1).max(0), i as u64)),
                );
            }
        }
        out
    }

    /// a o u = sum_i binom(|a|, i) a_(i-2) u; spans O(M).
    pub fn circ(&self, a: &State, u: &State) -> State {
        let mut out = State::zero(u.sector);
        for (w2, comp) in split_homogeneous(a) {
            assert!(w2 % 2 == 0, "circ requires integer-weight a");
            let wt = w2 / 2;
            for i in 0..=wt {
                out.add_assign(
                    &self
                        .engine
                        .mode(&comp, 2 * (i - 2), u)
                        .scaled(&binom_int(wt, i as u64)),
                );
            }
        }
        out
    }

    /// o(a) u = a_(|a|-1) u, the weight-preserving action.
    pub fn o_action(&self, a: &State, u: &State) -> State {
        let mut out = State::zero(u.sector);
        for (w2, comp) in split_homogeneous(a) {
            assert!(w2 % 2 == 0, "o action requires integer-weight a");
            let wt = w2 / 2;
            out.add_assign(&self.engine.mode(&comp, 2 * (wt - 1), u));
        }
        out
    }

    /// Conformal weight of a homogeneous basis monomial of a module.
    pub fn conformal_weight(&self, tag: ModuleTag, m: &Monomial) -> Rat {
        m.raw_weight() + tag.ground_energy()
    }

    /// Row-reduced span of {a o u : |a| + |u| + 1 <= W} inside M_{<=W};
    /// a runs over a graded basis of the even untwisted subalgebra.
    pub fn o_space_rows(&self, basis: &ModuleBasis) -> RowSpace {
        let tplus = ModuleBasis::build(self.engine.d, ModuleTag::TPlus, self.w_doubled);
        let mut rows = RowSpace::new(basis.dim());
        for am in &tplus.monos {
            let wa2 = am.raw_weight_doubled();
            if wa2 == 0 {
                continue; // vacuum circ anything = 0
            }
            let a = State::monomial(am.clone());
            for um in &basis.monos {
                if wa2 + um.raw_weight_doubled() + 2 > self.w_doubled {
                    continue;
                }
                let p = self.circ(&a, &State::monomial(um.clone()));
                if let Some(v) = basis.flatten(&p) {
                    rows.insert(&v);
                } else {
                    panic!("circ product escaped the weight cutoff");
                }
            }
        }
        rows
    }

    /// Deterministic sample circ products used for cache spot-checks.
    pub fn o_space_samples(&self, basis: &ModuleBasis, n: usize) -> Vec<(Monomial, Monomial)> {
        let tplus = ModuleBasis::build(self.engine.d, ModuleTag::TPlus, self.w_doubled);
        let mut out = Vec::new();
        'outer: for am in &tplus.monos {
            let wa2 = am.raw_weight_doubled();
            if wa2 == 0 {
                continue;
            }
            for um in &basis.monos {
                if wa2 + um.raw_weight_doubled() + 2 > self.w_doubled {
                    continue;
                }
                if !self
                    .circ(&State::monomial(am.clone()), &State::monomial(um.clone()))
                    .is_zero()
                {
                    out.push((am.clone(), um.clone()));
                    if out.len() >= n {
                        break 'outer;
                    }
                }
            }
        }
        out
    }

    /// L_{-1}u = omega*u - u*omega - |u|u for every basis monomial u with
    /// headroom below the cutoff. The identity holds exactly as states.
    pub fn check_l_minus1_lemma(&self, tag: ModuleTag) -> bool {
        let basis = ModuleBasis::build(self.engine.d, tag, self.w_doubled);
        let om = self.engine.omega();
        for um in &basis.monos {
            if um.raw_weight_doubled() + 6 > self.w_doubled {
                continue;
            }
            let u = State::monomial(um.clone());
            let wt = self.conformal_weight(tag, um);
            let mut rhs = self.star_left(&om, &u);
            rhs.sub_assign(&self.star_right(&u, &om));
            rhs.sub_assign(&u.scaled(&wt));
            let lhs = self.engine.virasoro(-1, &u);
            let mut diff = lhs;
            diff.sub_assign(&rhs);
            if !diff.is_zero() {
                return false;
            }
        }
        true
    }

    /// Default generator sets for the four modules.
    pub fn default_generators(&self, tag: ModuleTag) -> Vec<State> {
        match tag {
            ModuleTag::TPlus => vec![State::vacuum(Sector::Untwisted)],
            ModuleTag::TMinus => vec![Self::st("e(-1) |0>"), Self::st("f(-1) |0>")],
            ModuleTag::TtPlus => vec![State::vacuum(Sector::Twisted)],
            ModuleTag::TtMinus => vec![
                Self::st("e(-1/2) |theta>"),
                Self::st("f(-1/2) |theta>"),
            ],
        }
    }

    /// Closure of the generators under left/right star-multiplication by the
    /// strong generators (or, widened, by every homogeneous even element up
    /// to the cutoff), combined with O_W(M) into one row space.
    pub fn generated_subbimodule(
        &self,
        basis: &ModuleBasis,
        o_rows: &RowSpace,
        gens: &[State],
        widen: bool,
    ) -> RowSpace {
        let mut mult: Vec<State> = self
            .strong_generators()
            .into_iter()
            .map(|(_, s)| s)
            .collect();
        if widen {
            let tplus = ModuleBasis::build(self.engine.d, ModuleTag::TPlus, self.w_doubled);
            mult = tplus
                .monos
                .iter()
                .filter(|m| m.raw_weight_doubled() > 0)
                .map(|m| State::monomial(m.clone()))
                .collect();
        }
        let mut rows = o_rows.clone();
        let mut queue: Vec<State> = Vec::new();
        for g in gens {
            if let Some(v) = basis.flatten(g) {
                rows.insert(&v);
            }
            queue.push(g.clone());
        }
        while let Some(s) = queue.pop() {
            let ws = max_raw_doubled(&s);
            for g in &mult {
                let wg = max_raw_doubled(g);
                if ws + wg > self.w_doubled {
                    continue;
                }
                for p in [self.star_left(g, &s), self.star_right(&s, g)] {
                    if p.is_zero() {
                        continue;
                    }
                    let v = basis.flatten(&p).expect("product within cutoff");
                    if rows.insert(&v) {
                        queue.push(p);
                    }
                }
            }
        }
        rows
    }

    /// Certificate that every basis monomial of raw weight <= check_doubled
    /// lies in the generated sub-bimodule plus O_W(M).
    pub fn verify_generators(
        &self,
        tag: ModuleTag,
        check_doubled: i64,
        widen: bool,
    ) -> (Vec<(Monomial, bool)>, bool) {
        let basis = ModuleBasis::build(self.engine.d, tag, self.w_doubled);
        let o_rows = self.o_space_rows(&basis);
        self.verify_generators_with(tag, &basis, &o_rows, check_doubled, widen)
    }

    /// As `verify_generators`, but with a precomputed (possibly cached)
    /// O-space row basis.
    pub fn verify_generators_with(
        &self,
        tag: ModuleTag,
        basis: &ModuleBasis,
        o_rows: &RowSpace,
        check_doubled: i64,
        widen: bool,
    ) -> (Vec<(Monomial, bool)>, bool) {
        let gens = self.default_generators(tag);
        let span = self.generated_subbimodule(basis, o_rows, &gens, widen);
        let mut per = Vec::new();
        let mut all = true;
        for m in &basis.monos {
            if m.raw_weight_doubled() > check_doubled {
                continue;
            }
            let v = basis
                .flatten(&State::monomial(m.clone()))
                .expect("basis monomial");
            let ok = span.contains(&v);
            all &= ok;
            per.push((m.clone(), ok));
        }
        (per, all)
    }

    /// Like `verify_generators`, but falls back to the widened multiplier
    /// set when the strong-generator closure fails to certify (the reduction
    /// witnesses can need circ products beyond the cutoff). Returns the
    /// per-monomial results, overall success, and whether widening was used.
    pub fn verify_generators_auto(
        &self,
        tag: ModuleTag,
        check_doubled: i64,
    ) -> (Vec<(Monomial, bool)>, bool, bool) {
        let (per, all) = self.verify_generators(tag, check_doubled, false);
        if all {
            return (per, true, false);
        }
        let (per2, all2) = self.verify_generators(tag, check_doubled, true);
        (per2, all2, true)
    }

    /// Quadratic reduction congruences: for a = h1_(-p-1)h2_(-k+p)|0> the
    /// differences a_(-1)u - a*u and a_(0)u - (a*u - u*a) live in the span
    /// of monomials of length <= len(u)+2 and raw weight <= wt(u)+k.
    pub fn check_quadratic_reduction(&self, k_max: i64, u_raw_doubled_max: i64) -> bool {
        let kinds = ["e", "f"];
        for tag in [ModuleTag::TtPlus, ModuleTag::TtMinus] {
            let basis = ModuleBasis::build(self.engine.d, tag, self.w_doubled);
            for um in &basis.monos {
                let wu2 = um.raw_weight_doubled();
                if wu2 > u_raw_doubled_max {
                    continue;
                }
                let u = State::monomial(um.clone());
                let r = um.ops.len() as i64;
                for k in 1..=k_max {
                    if wu2 + 2 * (k + 1) > self.w_doubled {
                        continue;
                    }
                    for h1 in kinds {
                        for h2 in kinds {
                            for p in 0..k {
                                // sssd1: a = h1_(-p-1) h2_(-k+p) |0>, mode (-1) vs a*u
                                let a = Self::st(&format!(
                                    "{}(-{}) {}(-{}) |0>",
                                    h1,
                                    p + 1,
                                    h2,
                                    k - p
                                ));
                                let mut diff = self.engine.mode(&a, -2, &u);
                                diff.sub_assign(&self.star_left(&a, &u));
                                if !in_filtration(&diff, r + 2, wu2 + 2 * k) {
                                    return false;
                                }
                            }
                            // sssd2: a = h1_(-k-1) h2_(-1) |0>, mode (0) vs a*u - u*a
                            let a = Self::st(&format!("{}(-{}) {}(-1) |0>", h1, k + 1, h2));
                            if wu2 + 2 * (k + 2) > self.w_doubled {
                                continue;
                            }
                            let mut diff = self.engine.mode(&a, 0, &u);
                            let mut comm = self.star_left(&a, &u);
                            comm.sub_assign(&self.star_right(&u, &a));
                            diff.sub_assign(&comm);
                            if !in_filtration(&diff, r + 2, wu2 + 2 * k) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

/// All monomials have length <= r and doubled raw weight <= w2.
fn in_filtration(s: &State, r: i64, w2: i64) -> bool {
    s.terms
        .iter()
        .all(|(m, _)| m.ops.len() as i64 <= r && m.raw_weight_doubled() <= w2)
}

/// Outcome of a single identity check, with the computed value retained
/// so reports can show which variant of a published display was matched.
#[derive(Debug, Clone, serde::Serialize)]
pub struct IdentityOutcome {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

/// The exact state identities of the fusion analysis, checked mechanically.
/// Where a published display disagrees with the value forced by the
/// definitions (see the o(E)/o(F)/o(H) scalars), both variants are reported.
pub fn identity_suite(cx: &ZhuContext) -> Vec<IdentityOutcome> {
    let en = &cx.engine;
    let st = |s: &str| State::monomial(parse_monomial(s).unwrap());
    let mut out = Vec::new();
    let mut push = |name: &str, holds: bool, detail: String| {
        out.push(IdentityOutcome {
            name: name.to_string(),
            holds,
            detail,
        });
    };

    let e1 = st("e(-1) |0>");
    let f1 = st("f(-1) |0>");
    let big_e = st("e(-2) e(-1) |0>");
    let big_f = st("f(-2) f(-1) |0>");
    let mut big_h = st("e(-2) f(-1) |0>").scaled(&rat(1, 2));
    big_h.add_assign(&st("f(-2) e(-1) |0>").scaled(&rat(-1, 2)));
    let om = en.omega();

    // omega * h = (1/2) L_-1^2 h + 2 L_-1 h + h  for h in the weight-1 space
    for (n, h) in [("e", &e1), ("f", &f1)] {
        let lhs = cx.star_left(&om, h);
        let l1 = en.virasoro(-1, h);
        let mut rhs = en.virasoro(-1, &l1).scaled(&rat(1, 2));
        rhs.add_assign(&l1.scaled(&rat_int(2)));
        rhs.add_assign(h);
        let mut d = lhs.clone();
        d.sub_assign(&rhs);
        push(
            &format!("omega-star-{n}"),
            d.is_zero(),
            format!("omega*{n} = {}", lhs),
        );
    }

    // E*e = 0 and F*f = 0
    let ee = cx.star_left(&big_e, &e1);
    push("E-star-e-vanishes", ee.is_zero(), format!("E*e = {}", ee));
    let ff = cx.star_left(&big_f, &f1);
    push("F-star-f-vanishes", ff.is_zero(), format!("F*f = {}", ff));

    // Quadratic commutator relation, exact as states:
    // (h1_(-2)h1)*h2 - h2*(h1_(-2)h1)
    //   = 2<h1,h2> L_-1^2 h1 + 6<h1,h2> L_-1 h1 + 2<h1,h2> h1
    for (n, a, h, h1, pair) in [
        ("Ef", &big_e, &f1, &e1, rat_int(-1)),
        ("Fe", &big_f, &e1, &f1, rat_int(1)),
    ] {
        let mut lhs = cx.star_left(a, h);
        lhs.sub_assign(&cx.star_right(h, a));
        let l1 = en.virasoro(-1, h1);
        let mut rhs = en.virasoro(-1, &l1).scaled(&(rat_int(2) * pair.clone()));
        rhs.add_assign(&l1.scaled(&(rat_int(6) * pair.clone())));
        rhs.add_assign(&h1.scaled(&(rat_int(2) * pair.clone())));
        let mut d = lhs.clone();
        d.sub_assign(&rhs);
        push(
            &format!("quadratic-commutator-{n}"),
            d.is_zero(),
            format!("lhs = {}", lhs),
        );
    }

    // Eigenvalue relation mod O_W(T-):
    // (1/2)(w^2*h - 2 w*h*w + h*w^2) - (1/2)(w*h + h*w) reduces to zero.
    {
        let basis = ModuleBasis::build(en.d, ModuleTag::TMinus, cx.w_doubled);
        let o_rows = cx.o_space_rows(&basis);
        let mut all = true;
        for h in [&e1, &f1] {
            let wh = cx.star_left(&om, h);
            let hw = cx.star_right(h, &om);
            let mut x = cx.star_left(&om, &wh); // w*(w*h)
            x.add_assign(&cx.star_right(&cx.star_right(h, &om), &om)); // (h*w)*w
            x.sub_assign(&cx.star_right(&wh, &om).scaled(&rat_int(2))); // -2 (w*h)*w
            let mut v = x.scaled(&rat(1, 2));
            v.sub_assign(&wh.scaled(&rat(1, 2)));
            v.sub_assign(&hw.scaled(&rat(1, 2)));
            let flat = basis.flatten(&v).expect("within cutoff");
            all &= o_rows.contains(&flat);
        }
        push(
            "eigenvalue-relation-mod-O",
            all,
            "(1/2)(w^2*h - 2w*h*w + h*w^2) - (1/2)(w*h + h*w) in O_W(T-)".into(),
        );
    }

    // Twisted structural identities (hold exactly as states).
    let th = State::vacuum(Sector::Twisted);
    {
        // L_-1|theta> = e(-1/2)f(-1/2)|theta>; L_-2|theta> = 2 L_-1^2 |theta>
        let l1 = en.virasoro(-1, &th);
        let mut d = l1.clone();
        d.sub_assign(&st("e(-1/2) f(-1/2) |theta>"));
        push("twisted-L-1-theta", d.is_zero(), format!("L_-1|theta> = {}", l1));
        let mut d2 = en.virasoro(-2, &th);
        d2.sub_assign(&en.virasoro(-1, &l1).scaled(&rat_int(2)));
        push("twisted-L-2-theta", d2.is_zero(), "L_-2 = 2 L_-1^2 on |theta>".into());
        // theta*omega = L_-2 theta + L_-1 theta
        let mut d3 = cx.star_right(&th, &om);
        d3.sub_assign(&en.virasoro(-2, &th));
        d3.sub_assign(&l1);
        push("twisted-theta-star-omega", d3.is_zero(), "theta*w = L_-2 + L_-1".into());
        // L_-1 theta = omega*theta - theta*omega + 1/8 theta
        let mut d4 = cx.star_left(&om, &th);
        d4.sub_assign(&cx.star_right(&th, &om));
        d4.add_assign(&th.scaled(&rat(1, 8)));
        d4.sub_assign(&en.virasoro(-1, &th));
        push("twisted-L-1-from-star", d4.is_zero(), "lemma instance on |theta>".into());
    }

    for (n, u) in [("e", st("e(-1/2) |theta>")), ("f", st("f(-1/2) |theta>"))] {
        // t-0: H*u - u*H = H_(0)u + 2H_(1)u + H_(2)u
        let mut lhs = cx.star_left(&big_h, &u);
        lhs.sub_assign(&cx.star_right(&u, &big_h));
        let mut rhs = en.mode(&big_h, 0, &u);
        rhs.add_assign(&en.mode(&big_h, 2, &u).scaled(&rat_int(2)));
        rhs.add_assign(&en.mode(&big_h, 4, &u));
        let mut d = lhs.clone();
        d.sub_assign(&rhs);
        push(&format!("twisted-t0-{n}"), d.is_zero(), format!("H*u-u*H = {}", lhs));

        // t-4: u*omega = L_-2 u + L_-1 u
        let mut d4 = cx.star_right(&u, &om);
        d4.sub_assign(&en.virasoro(-2, &u));
        d4.sub_assign(&en.virasoro(-1, &u));
        push(&format!("twisted-t4-{n}"), d4.is_zero(), "u*w = L_-2 u + L_-1 u".into());

        // t-5: L_-1 u = (1/2) h_(-3/2)|theta>
        let mut d5 = en.virasoro(-1, &u);
        d5.sub_assign(&st(&format!("{n}(-3/2) |theta>")).scaled(&rat(1, 2)));
        push(&format!("twisted-t5-{n}"), d5.is_zero(), "L_-1 u = (1/2) h(-3/2)".into());

        // t-6-1: L_-1^2 u = (3/4) h_(-5/2) + (1/2) h_(-3/2) e_(-1/2) f_(-1/2)
        let l11 = en.virasoro(-1, &en.virasoro(-1, &u));
        let mut rhs61 = st(&format!("{n}(-5/2) |theta>")).scaled(&rat(3, 4));
        rhs61.add_assign(
            &st(&format!("{n}(-3/2) e(-1/2) f(-1/2) |theta>")).scaled(&rat(1, 2)),
        );
        let mut d61 = l11.clone();
        d61.sub_assign(&rhs61);
        push(&format!("twisted-t6-1-{n}"), d61.is_zero(), format!("L_-1^2 u = {}", l11));

        // Assembled relation (computed variant): H*u - u*H = -L_-1 u - (3/8) u.
        // The published assembly carries different scalars; the computed one
        // is forced by the sign-consistent normal ordering (see ledger note).
        let mut dc = lhs.clone();
        dc.add_assign(&en.virasoro(-1, &u));
        dc.add_assign(&u.scaled(&rat(3, 8)));
        push(
            &format!("twisted-H-commutator-assembled-{n}"),
            dc.is_zero(),
            "H*u - u*H = -L_-1 u - (3/8)u (computed variant)".into(),
        );
    }

    // o(E), o(F), o(H) on the twisted lowest-weight space: computed values
    // and their proportionality to the published table.
    {
        let ue = st("e(-1/2) |theta>");
        let uf = st("f(-1/2) |theta>");
        let oe = cx.o_action(&big_e, &uf);
        let of_ = cx.o_action(&big_f, &ue);
        let oh_e = cx.o_action(&big_h, &ue);
        let oh_f = cx.o_action(&big_h, &uf);
        let computed = oe == ue.scaled(&rat(-1, 2))
            && of_ == uf.scaled(&rat(1, 2))
            && cx.o_action(&big_e, &ue).is_zero()
            && cx.o_action(&big_f, &uf).is_zero()
            && oh_e == ue.scaled(&rat(-3, 8))
            && oh_f == uf.scaled(&rat(-3, 8));
        push(
            "twisted-o-actions-computed",
            computed,
            format!(
                "o(E)f = {}; o(F)e = {}; o(H)e = {}; o(H)f = {}",
                oe, of_, oh_e, oh_f
            ),
        );
        // Proportionality to the published variant: o(E)f ~ e with nonzero
        // scalar, o(F)e ~ f with nonzero scalar, o(E)e = o(F)f = 0.
        let prop = !oe.is_zero()
            && oe.terms.len() == 1
            && oe.terms.keys().next() == ue.terms.keys().next()
            && !of_.is_zero()
            && of_.terms.len() == 1
            && of_.terms.keys().next() == uf.terms.keys().next();
        push(
            "twisted-o-actions-proportional-to-published",
            prop,
            "o(E)f in C* e(-1/2)|theta>, o(F)e in C* f(-1/2)|theta>".into(),
        );
        // Zhu homomorphism cross-check: o(E*F - F*E) = [o(E), o(F)].
        let mut x = cx.star_left(&big_e, &big_f);
        x.sub_assign(&cx.star_left(&big_f, &big_e));
        let mut ok = true;
        for u in [&ue, &uf] {
            let lhs = cx.o_action(&x, u);
            let mut rhs = cx.o_action(&big_e, &cx.o_action(&big_f, u));
            rhs.sub_assign(&cx.o_action(&big_f, &cx.o_action(&big_e, u)));
            let mut d = lhs;
            d.sub_assign(&rhs);
            ok &= d.is_zero();
        }
        push(
            "zhu-homomorphism-EF-commutator",
            ok,
            "o(E*F-F*E) = [o(E),o(F)] on Omega(Tt-)".into(),
        );
    }

    out
}
