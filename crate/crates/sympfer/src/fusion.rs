//! Fusion-rule verification: scalar obstructions, mechanical contraction
//! upper bounds, intertwiner-existence witnesses, the d=1 fusion table,
//! the Klein-four fusion algebra, and the d>1 reduction.

use crate::fock::{grade_basis, parse_monomial, Sector, State};
use crate::linalg::RowSpace;
use crate::rat::{rat, rat_int, Rat};
use crate::zhu::{max_raw_doubled, ModuleBasis, ModuleTag, ZhuContext};
use num_traits::Zero;

/// Klein-four label (i,j): T^{(0,0)}=T+, T^{(1,0)}=T-, T^{(0,1)}=Tt+,
/// T^{(1,1)}=Tt-.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct KleinLabel(pub u8, pub u8);

impl KleinLabel {
    pub fn from_tag(t: ModuleTag) -> KleinLabel {
        match t {
            ModuleTag::TPlus => KleinLabel(0, 0),
            ModuleTag::TMinus => KleinLabel(1, 0),
            ModuleTag::TtPlus => KleinLabel(0, 1),
            ModuleTag::TtMinus => KleinLabel(1, 1),
        }
    }

    pub fn to_tag(self) -> ModuleTag {
        match (self.0 % 2, self.1 % 2) {
            (0, 0) => ModuleTag::TPlus,
            (1, 0) => ModuleTag::TMinus,
            (0, 1) => ModuleTag::TtPlus,
            _ => ModuleTag::TtMinus,
        }
    }

    pub fn add(self, o: KleinLabel) -> KleinLabel {
        KleinLabel((self.0 + o.0) % 2, (self.1 + o.1) % 2)
    }
}

/// alpha(x,y) = (x-y)^2/2 - (x+y)/2.
pub fn alpha(x: &Rat, y: &Rat) -> Rat {
    let t = x.clone() - y.clone();
    t.clone() * t / rat_int(2) - (x.clone() + y.clone()) / rat_int(2)
}

/// beta(x,y) = y - 2(x-y-7/8)(x-y+1/8) - (x-y+1/8).
pub fn beta(x: &Rat, y: &Rat) -> Rat {
    let t = x.clone() - y.clone();
    y.clone() - rat_int(2) * (t.clone() - rat(7, 8)) * (t.clone() + rat(1, 8))
        - (t + rat(1, 8))
}

/// gamma1(x,y) = x - y.
pub fn gamma1(x: &Rat, y: &Rat) -> Rat {
    x.clone() - y.clone()
}

/// gamma2(x,y) = y + (2/3)(x-y-11/8)(x-y-3/8) + (5/3)(x-y-3/8) + 1/3.
pub fn gamma2(x: &Rat, y: &Rat) -> Rat {
    let t = x.clone() - y.clone();
    y.clone()
        + rat(2, 3) * (t.clone() - rat(11, 8)) * (t.clone() - rat(3, 8))
        + rat(5, 3) * (t - rat(3, 8))
        + rat(1, 3)
}

/// Matrix of o(a) on the lowest graded piece of a module, columns indexed
/// by the Omega basis: o(a) v_j = sum_i m[i][j] v_i.
fn o_matrix(cx: &ZhuContext, a: &State, tag: ModuleTag) -> Vec<Vec<Rat>> {
    let basis = ModuleBasis::build(cx.engine.d, tag, cx.w_doubled);
    let omega = basis.omega_basis();
    let n = omega.len();
    let mut m = vec![vec![Rat::zero(); n]; n];
    for (j, mj) in omega.iter().enumerate() {
        let img = cx.o_action(a, &State::monomial(mj.clone()));
        for (i, mi) in omega.iter().enumerate() {
            m[i][j] = img.coeff(mi);
        }
    }
    m
}

/// Mechanical upper bound for dim Omega(N)^* . A(L) . Omega(M):
/// the free space on (N-dual basis) x (L monomials <= W) x (M-Omega basis)
/// modulo (a) rows of O_W(L), (b) left moves u'⊗(a*s)⊗v = (u'.o(a))⊗s⊗v,
/// (c) right moves u'⊗(s*a)⊗v = u'⊗s⊗(o(a)v), for every even monomial a
/// with the product inside the cutoff. All imposed relations are true
/// relations, so the quotient dimension is a sound upper bound.
pub fn generic_contraction_bound(
    cx: &ZhuContext,
    l: ModuleTag,
    m: ModuleTag,
    n: ModuleTag,
) -> usize {
    let d = cx.engine.d;
    let w = cx.w_doubled;
    let lb = ModuleBasis::build(d, l, w);
    let mb = ModuleBasis::build(d, m, w);
    let nb = ModuleBasis::build(d, n, w);
    let m_omega = mb.omega_basis();
    let n_omega = nb.omega_basis();
    let (nm, nn, nl) = (m_omega.len(), n_omega.len(), lb.dim());
    let dim_b = nn * nl * nm;
    let idx = |i: usize, k: usize, j: usize| (i * nl + k) * nm + j;

    let mut rows = RowSpace::new(dim_b);

    // (a) O_W(L) rows, tensored with every (u', v) pair.
    let o_rows = cx.o_space_rows(&lb);
    for r in o_rows.rows() {
        for i in 0..nn {
            for j in 0..nm {
                let mut v = vec![Rat::zero(); dim_b];
                for (k, c) in r.iter().enumerate() {
                    if !c.is_zero() {
                        v[idx(i, k, j)] = c.clone();
                    }
                }
                rows.insert(&v);
            }
        }
    }

    // multipliers: every even untwisted monomial of positive weight <= W
    let tplus = ModuleBasis::build(d, ModuleTag::TPlus, w);
    let mults: Vec<State> = tplus
        .monos
        .iter()
        .filter(|mm| mm.raw_weight_doubled() > 0)
        .map(|mm| State::monomial(mm.clone()))
        .collect();

    for a in &mults {
        let wa = max_raw_doubled(a);
        let o_n = o_matrix(cx, a, n);
        let o_m = o_matrix(cx, a, m);
        for (k, sm) in lb.monos.iter().enumerate() {
            if sm.raw_weight_doubled() + wa > w {
                continue;
            }
            let s = State::monomial(sm.clone());
            let ls = lb.flatten(&cx.star_left(a, &s)).expect("within cutoff");
            let rs = lb.flatten(&cx.star_right(&s, a)).expect("within cutoff");
            for i in 0..nn {
                for j in 0..nm {
                    // left move: (a*s) at (i,.,j)  -  sum_i2 o_n[i][i2] (i2,s,j)
                    let mut v = vec![Rat::zero(); dim_b];
                    for (kk, c) in ls.iter().enumerate() {
                        if !c.is_zero() {
                            v[idx(i, kk, j)] = c.clone();
                        }
                    }
                    for (i2, row) in o_n.iter().enumerate().take(nn) {
                        let c = &o_n[i][i2];
                        let _ = row;
                        if !c.is_zero() {
                            v[idx(i2, k, j)] = v[idx(i2, k, j)].clone() - c.clone();
                        }
                    }
                    rows.insert(&v);
                    // right move: (s*a) at (i,.,j)  -  sum_j2 o_m[j2][j] (i,s,j2)
                    let mut v = vec![Rat::zero(); dim_b];
                    for (kk, c) in rs.iter().enumerate() {
                        if !c.is_zero() {
                            v[idx(i, kk, j)] = c.clone();
                        }
                    }
                    for j2 in 0..nm {
                        let c = &o_m[j2][j];
                        if !c.is_zero() {
                            v[idx(i, k, j2)] = v[idx(i, k, j2)].clone() - c.clone();
                        }
                    }
                    rows.insert(&v);
                }
            }
        }
    }

    dim_b - rows.rank()
}

/// Upper bound for dim I(L, M; N) at d=1 following the case analysis:
/// the triple is first brought to canonical order (permutation symmetry
/// plus self-duality), then dispatched on the first slot.
pub fn contraction_upper_bound(
    cx: &ZhuContext,
    l: ModuleTag,
    m: ModuleTag,
    n: ModuleTag,
) -> (usize, Vec<String>) {
    let mut t = [l, m, n];
    t.sort();
    let [cl, cm, cn] = t;
    let mut prov = Vec::new();
    if t != [l, m, n] {
        prov.push("permutation symmetry with self-dual modules".to_string());
    }
    let x = cn.lowest_weight();
    let y = cm.lowest_weight();
    match cl {
        ModuleTag::TPlus => {
            // fusion with the algebra itself: 1 iff M = N
            prov.push("module-category unit row".to_string());
            ((cm == cn) as usize, prov)
        }
        ModuleTag::TMinus => {
            let a = alpha(&x, &y);
            if !a.is_zero() {
                prov.push(format!("alpha obstruction, alpha = {}", crate::rat::rat_text(&a)));
                (0, prov)
            } else {
                let r = generic_contraction_bound(cx, cl, cm, cn);
                prov.push(format!(
                    "alpha = 0; mechanical symbol-space quotient rank = {}",
                    r
                ));
                (r, prov)
            }
        }
        ModuleTag::TtPlus => {
            let b = beta(&x, &y);
            if !b.is_zero() {
                prov.push(format!("beta obstruction, beta = {}", crate::rat::rat_text(&b)));
                (0, prov)
            } else {
                let r = generic_contraction_bound(cx, cl, cm, cn);
                prov.push(format!("beta = 0; symbol-space quotient rank = {}", r));
                (r, prov)
            }
        }
        ModuleTag::TtMinus => {
            // gamma test with o(H) eigenvalues computed from the engine
            let coeffs = gamma_coefficients(cx);
            if coeffs.iter().all(|c| !c.is_zero()) {
                prov.push("gamma obstruction, all coefficients nonzero".to_string());
                (0, prov)
            } else {
                let r = generic_contraction_bound(cx, cl, cm, cn);
                prov.push(format!("gamma inconclusive; quotient rank = {}", r));
                (r, prov)
            }
        }
    }
}

/// The gamma-branch coefficient set gamma1(lam_i, lam_j) - gamma2(3/8, 3/8)
/// where lam are the eigenvalues of o(H) on the lowest piece of Tt-.
pub fn gamma_coefficients(cx: &ZhuContext) -> Vec<Rat> {
    let h = cx
        .strong_generators()
        .into_iter()
        .find(|(n, _)| *n == "H")
        .unwrap()
        .1;
    let m = o_matrix(cx, &h, ModuleTag::TtMinus);
    assert!(m[0][1].is_zero() && m[1][0].is_zero(), "o(H) not diagonal");
    let lams = [m[0][0].clone(), m[1][1].clone()];
    let g2 = gamma2(&rat(3, 8), &rat(3, 8));
    let mut out = Vec::new();
    for a in &lams {
        for b in &lams {
            out.push(gamma1(a, b) - g2.clone());
        }
    }
    out
}

/// Structural existence witness for a nonzero intertwining operator.
#[derive(Debug, Clone, serde::Serialize)]
pub struct Witness {
    pub kind: String,
    pub moves: Vec<String>,
    pub coefficient_checked: bool,
}

/// Returns a witness that dim I(L, M; N) >= 1, or None when the Klein
/// labels do not match (in which case the upper bound is 0 anyway).
pub fn intertwiner_witness(
    cx: &ZhuContext,
    l: ModuleTag,
    m: ModuleTag,
    n: ModuleTag,
) -> Option<Witness> {
    let kl = KleinLabel::from_tag(l);
    if kl.add(KleinLabel::from_tag(m)) != KleinLabel::from_tag(n) {
        return None;
    }
    let mut t = [l, m, n];
    t.sort();
    let moves = if t == [l, m, n] {
        vec![]
    } else {
        vec!["permutation symmetry with self-dual modules".to_string()]
    };
    if t[0] == ModuleTag::TPlus {
        // module structure: check one nonzero coefficient of Y(omega) on
        // the lowest vector of M (= N after canonicalization)
        assert_eq!(t[1], t[2]);
        let tag = t[1];
        let basis = ModuleBasis::build(cx.engine.d, tag, cx.w_doubled);
        let low = State::monomial(basis.omega_basis()[0].clone());
        let img = cx.engine.mode(&cx.engine.omega(), 0, &low); // L_{-1}-level mode
        let alt = cx.engine.virasoro(-2, &low);
        let ok = !img.is_zero() || !alt.is_zero();
        return Some(Witness {
            kind: "module vertex operator".to_string(),
            moves,
            coefficient_checked: ok,
        });
    }
    // remaining nonzero case: {T-, Tt+, Tt-} via the twisted operator
    assert_eq!(t, [ModuleTag::TMinus, ModuleTag::TtPlus, ModuleTag::TtMinus]);
    let e1 = State::monomial(parse_monomial("e(-1) |0>").unwrap());
    let th = State::vacuum(Sector::Twisted);
    let img = cx.engine.mode(&e1, -1, &th); // e_(-1/2)|theta>
    let expect = State::monomial(parse_monomial("e(-1/2) |theta>").unwrap());
    let ok = !img.is_zero() && img.coeff(expect.terms.keys().next().unwrap()) != Rat::zero();
    Some(Witness {
        kind: "twisted operator restriction".to_string(),
        moves,
        coefficient_checked: ok,
    })
}

/// One entry of the fusion table.
#[derive(Debug, Clone, serde::Serialize)]
pub struct TableEntry {
    pub l: String,
    pub m: String,
    pub n: String,
    pub dim: usize,
    pub status: String,
    pub provenance: Vec<String>,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct FusionTable {
    pub d: u8,
    pub entries: Vec<TableEntry>,
}

impl FusionTable {
    pub fn lookup(&self, l: &str, m: &str, n: &str) -> Option<&TableEntry> {
        self.entries
            .iter()
            .find(|e| e.l == l && e.m == m && e.n == n)
    }

    /// Human-readable 4x4 product table.
    pub fn product_table_text(&self) -> String {
        let tags = ModuleTag::all();
        let mut out = String::from("x    | T+   T-   Tt+  Tt-\n-----+--------------------\n");
        for m in tags {
            out.push_str(&format!("{:<4} |", m.name()));
            for n in tags {
                let prod: Vec<&str> = tags
                    .iter()
                    .filter(|l| {
                        self.lookup(m.name(), n.name(), l.name())
                            .map(|e| e.dim > 0)
                            .unwrap_or(false)
                    })
                    .map(|l| l.name())
                    .collect();
                out.push_str(&format!(" {:<4}", prod.join("+")));
            }
            out.push('\n');
        }
        out
    }
}

/// The full 64-entry ordered table at d=1. dim I(M, N; L) entries are
/// computed as min of the mechanical upper bound and the witnessed lower
/// bound; the two must agree for status "final".
pub fn fusion_table_d1(cx: &ZhuContext) -> FusionTable {
    let mut entries = Vec::new();
    for l in ModuleTag::all() {
        for m in ModuleTag::all() {
            for n in ModuleTag::all() {
                let (ub, mut prov) = contraction_upper_bound(cx, l, m, n);
                let wit = intertwiner_witness(cx, l, m, n);
                let lb = match &wit {
                    Some(w) if w.coefficient_checked => 1,
                    _ => 0,
                };
                if let Some(w) = &wit {
                    prov.push(format!("witness: {}", w.kind));
                }
                assert!(
                    lb <= ub,
                    "witness exceeds upper bound for ({},{},{})",
                    l.name(),
                    m.name(),
                    n.name()
                );
                let status = if lb == ub { "final" } else { "upper-bound" };
                entries.push(TableEntry {
                    l: l.name().to_string(),
                    m: m.name().to_string(),
                    n: n.name().to_string(),
                    dim: ub,
                    status: status.to_string(),
                    provenance: prov,
                });
            }
        }
    }
    FusionTable { d: 1, entries }
}

/// Checks the table realizes the Klein-four group algebra: dim I(M,N;L)
/// equals the label-sum indicator, products are associative over all 64
/// triples, T+ is the identity, and sum_L dim I(M,N;L) = 1.
pub fn klein_four_check(t: &FusionTable) -> bool {
    let tags = ModuleTag::all();
    let mut ok = t.entries.iter().all(|e| e.status == "final");
    for m in tags {
        for n in tags {
            let mut total = 0;
            for l in tags {
                let d_ = t
                    .lookup(m.name(), n.name(), l.name())
                    .map(|e| e.dim)
                    .unwrap_or(99);
                let expect = (KleinLabel::from_tag(m).add(KleinLabel::from_tag(n))
                    == KleinLabel::from_tag(l)) as usize;
                ok &= d_ == expect;
                total += d_;
            }
            ok &= total == 1; // simple-current fusion
        }
    }
    // associativity of the induced product (label arithmetic)
    for a in tags {
        for b in tags {
            for c in tags {
                let ab = KleinLabel::from_tag(a).add(KleinLabel::from_tag(b));
                let lhs = ab.add(KleinLabel::from_tag(c));
                let bc = KleinLabel::from_tag(b).add(KleinLabel::from_tag(c));
                let rhs = KleinLabel::from_tag(a).add(bc);
                ok &= lhs == rhs;
            }
        }
    }
    // identity row
    for m in tags {
        ok &= t
            .lookup(ModuleTag::TPlus.name(), m.name(), m.name())
            .map(|e| e.dim == 1)
            .unwrap_or(false);
    }
    ok
}

/// Element of G^d with components in Z/2 x Z/2.
pub type GVector = Vec<KleinLabel>;

/// X(i,j) at rank d: vectors with all second components equal to j and the
/// number of first components equal to 1 congruent to i mod 2.
pub fn xset(i: u8, j: u8, d: u8) -> Vec<GVector> {
    let mut out = Vec::new();
    for bits in 0..(1u32 << d) {
        let v: GVector = (0..d)
            .map(|k| KleinLabel(((bits >> k) & 1) as u8, j % 2))
            .collect();
        let ones = v.iter().filter(|c| c.0 == 1).count() as u8;
        if ones % 2 == i % 2 {
            out.push(v);
        }
    }
    out
}

fn gvec_add(a: &GVector, b: &GVector) -> GVector {
    a.iter().zip(b).map(|(x, y)| x.add(*y)).collect()
}

/// Element-wise verification of X(i,j) + X(i',j') = X(i+i', j+j').
pub fn xset_sum_check(d: u8) -> bool {
    for i in 0..2u8 {
        for j in 0..2u8 {
            for i2 in 0..2u8 {
                for j2 in 0..2u8 {
                    let xs = xset(i, j, d);
                    let ys = xset(i2, j2, d);
                    let zs = xset((i + i2) % 2, (j + j2) % 2, d);
                    let mut sums: Vec<GVector> = Vec::new();
                    for a in &xs {
                        for b in &ys {
                            let s = gvec_add(a, b);
                            if !sums.contains(&s) {
                                sums.push(s);
                            }
                        }
                    }
                    let mut zsort = zs.clone();
                    zsort.sort();
                    sums.sort();
                    if sums != zsort {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Decomposition of the four rank-d modules into tensor-component summands.
pub fn decompose_module(label: KleinLabel, d: u8) -> Vec<GVector> {
    xset(label.0, label.1, d)
}

/// Graded dimension (doubled raw weight -> dim) of a d=1 module up to w2.
fn graded_dims_d1(tag: ModuleTag, w2: i64) -> Vec<usize> {
    let b = ModuleBasis::build(1, tag, w2);
    let mut out = vec![0usize; (w2 + 1) as usize];
    for m in &b.monos {
        out[m.raw_weight_doubled() as usize] += 1;
    }
    out
}

/// Verify the d=2 decompositions by graded dimension up to doubled raw
/// weight 2*w_max: dim_w F^label(2) = sum over summands of the convolution
/// of component graded dimensions.
pub fn decomposition_dimension_check(w2_max: i64) -> bool {
    for label in [
        KleinLabel(0, 0),
        KleinLabel(1, 0),
        KleinLabel(0, 1),
        KleinLabel(1, 1),
    ] {
        let sector = if label.1 == 0 {
            Sector::Untwisted
        } else {
            Sector::Twisted
        };
        // left side: rank-2 module graded dimensions
        let mut lhs = vec![0usize; (w2_max + 1) as usize];
        for w in 0..=w2_max {
            lhs[w as usize] = grade_basis(sector, 2, Some(label.0), w).len();
        }
        // right side: sum of convolutions over the decomposition
        let mut rhs = vec![0usize; (w2_max + 1) as usize];
        for summand in decompose_module(label, 2) {
            let g1 = graded_dims_d1(summand[0].to_tag(), w2_max);
            let g2 = graded_dims_d1(summand[1].to_tag(), w2_max);
            for (w1, a) in g1.iter().enumerate() {
                for (w2, b) in g2.iter().enumerate() {
                    if w1 + w2 <= w2_max as usize {
                        rhs[w1 + w2] += a * b;
                    }
                }
            }
        }
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// Fusion table at rank d > 1, label-indexed. Upper bound: restrict to a
/// fixed summand pair (a, b); by the tensor-product factorization the bound
/// is the number of summands c of Z with a + b = c, which is 1 when
/// Z = X + Y and 0 otherwise (checked for independence of the chosen pair).
/// Lower bound: tensor product of d=1 witnesses restricted to a summand.
pub fn fusion_table_dn(d1: &FusionTable, d: u8) -> FusionTable {
    assert!(d >= 1);
    let labels = [
        KleinLabel(0, 0),
        KleinLabel(1, 0),
        KleinLabel(0, 1),
        KleinLabel(1, 1),
    ];
    let d1dim = |a: KleinLabel, b: KleinLabel, c: KleinLabel| -> usize {
        d1.lookup(a.to_tag().name(), b.to_tag().name(), c.to_tag().name())
            .map(|e| e.dim)
            .unwrap_or(0)
    };
    let mut entries = Vec::new();
    for lm in labels {
        for ln in labels {
            for ll in labels {
                let xs = decompose_module(lm, d);
                let ys = decompose_module(ln, d);
                let zs = decompose_module(ll, d);
                let mut val: Option<usize> = None;
                let mut consistent = true;
                for a in &xs {
                    for b in &ys {
                        let bound: usize = zs
                            .iter()
                            .map(|c| {
                                (0..d as usize)
                                    .map(|k| d1dim(a[k], b[k], c[k]))
                                    .product::<usize>()
                            })
                            .sum();
                        match val {
                            None => val = Some(bound),
                            Some(v) => consistent &= v == bound,
                        }
                    }
                }
                let ub = val.unwrap_or(0);
                let expect = (lm.add(ln) == ll) as usize;
                let lb = if expect == 1 {
                    // restriction witness: a fixed summand pair realizes a
                    // nonzero d=1 fusion componentwise
                    let a = &xs[0];
                    let b = &ys[0];
                    let c = gvec_add(a, b);
                    let w: usize = (0..d as usize)
                        .map(|k| d1dim(a[k], b[k], c[k]))
                        .product();
                    w.min(1)
                } else {
                    0
                };
                let status = if consistent && lb == ub {
                    "final"
                } else {
                    "upper-bound"
                };
                entries.push(TableEntry {
                    l: ll.to_tag().name().to_string(),
                    m: lm.to_tag().name().to_string(),
                    n: ln.to_tag().name().to_string(),
                    dim: ub,
                    status: status.to_string(),
                    provenance: vec![
                        "tensor decomposition + componentwise rank-1 table".to_string(),
                    ],
                });
            }
        }
    }
    FusionTable { d, entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx() -> ZhuContext {
        ZhuContext::new(1, 12)
    }

    #[test]
    fn scalar_case_tables() {
        // alpha case table at the six conformal-weight pairs
        assert_eq!(alpha(&rat_int(1), &rat_int(1)), rat_int(-1));
        assert_eq!(alpha(&rat(-1, 8), &rat_int(1)), rat(25, 128));
        assert_eq!(alpha(&rat(3, 8), &rat_int(1)), rat(-63, 128));
        assert_eq!(alpha(&rat(-1, 8), &rat(-1, 8)), rat(1, 8));
        assert_eq!(alpha(&rat(3, 8), &rat(-1, 8)), rat_int(0));
        assert_eq!(alpha(&rat(3, 8), &rat(3, 8)), rat(-3, 8));
        // beta case table
        assert_eq!(beta(&rat(3, 8), &rat(-1, 8)), rat(-9, 32));
        assert_eq!(beta(&rat(-1, 8), &rat(-1, 8)), rat(-1, 32));
        assert_eq!(beta(&rat(3, 8), &rat(3, 8)), rat(15, 32));
        // gamma values
        assert_eq!(gamma2(&rat(3, 8), &rat(3, 8)), rat(41, 96));
        assert_eq!(gamma1(&rat(1, 4), &rat(1, 4)), rat_int(0));
        assert_eq!(gamma1(&rat(1, 4), &rat(-1, 4)), rat(1, 2));
        assert_eq!(gamma1(&rat(-1, 4), &rat(1, 4)), rat(-1, 2));
    }

    #[test]
    fn gamma_branch_coefficients_nonzero() {
        let c = cx();
        let coeffs = gamma_coefficients(&c);
        assert_eq!(coeffs.len(), 4);
        assert!(coeffs.iter().all(|x| !x.is_zero()));
        // engine o(H) is scalar, so all gamma1 terms vanish and every
        // coefficient equals -gamma2(3/8,3/8)
        for x in &coeffs {
            assert_eq!(x.clone(), rat_int(0) - rat(41, 96));
        }
        // the published eigenvalue variant (+-1/4) also gives nonzero
        let g2 = gamma2(&rat(3, 8), &rat(3, 8));
        for a in [rat(1, 4), rat(-1, 4)] {
            for b in [rat(1, 4), rat(-1, 4)] {
                assert!(!(gamma1(&a, &b) - g2.clone()).is_zero());
            }
        }
    }

    #[test]
    fn residual_rank_is_one() {
        let c = cx();
        let r = generic_contraction_bound(&c, ModuleTag::TMinus, ModuleTag::TtPlus, ModuleTag::TtMinus);
        assert_eq!(r, 1);
    }

    #[test]
    fn generic_bound_matches_dispatch_for_tminus() {
        let c = cx();
        // a zero case certified both ways
        let r = generic_contraction_bound(&c, ModuleTag::TMinus, ModuleTag::TMinus, ModuleTag::TMinus);
        assert_eq!(r, 0);
        let r2 = generic_contraction_bound(&c, ModuleTag::TMinus, ModuleTag::TtMinus, ModuleTag::TtMinus);
        assert_eq!(r2, 0);
    }

    #[test]
    fn d1_table_is_klein_four() {
        let c = cx();
        let t = fusion_table_d1(&c);
        assert_eq!(t.entries.len(), 64);
        assert!(klein_four_check(&t));
    }

    #[test]
    fn witnesses_match_theorem_families() {
        let c = cx();
        // the five unordered nonzero families
        let w = intertwiner_witness(&c, ModuleTag::TMinus, ModuleTag::TtPlus, ModuleTag::TtMinus);
        assert!(w.unwrap().coefficient_checked);
        let w2 = intertwiner_witness(&c, ModuleTag::TPlus, ModuleTag::TMinus, ModuleTag::TMinus);
        assert!(w2.unwrap().coefficient_checked);
        // a zero triple has no witness
        assert!(intertwiner_witness(&c, ModuleTag::TMinus, ModuleTag::TMinus, ModuleTag::TMinus).is_none());
    }

    #[test]
    fn xsets_and_sums() {
        for d in 1..=4u8 {
            for i in 0..2 {
                for j in 0..2 {
                    assert_eq!(xset(i, j, d).len(), 1usize << (d - 1));
                }
            }
            assert!(xset_sum_check(d));
        }
        assert_eq!(xset(0, 0, 1), vec![vec![KleinLabel(0, 0)]]);
    }

    #[test]
    fn d2_decomposition_dimensions() {
        assert!(decomposition_dimension_check(8));
    }

    #[test]
    fn d2_table_matches_klein_four() {
        let c = cx();
        let t1 = fusion_table_d1(&c);
        let t2 = fusion_table_dn(&t1, 2);
        assert!(klein_four_check(&t2));
    }
}
