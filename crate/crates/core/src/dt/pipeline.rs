use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{rat, Grading, LaurentPoly, Monomial, Rational, RationalFunction};
use crate::hilb;
use crate::partitions::{partitions_up_to, Partition2D};
use crate::report::Report;
use crate::{Error, Result};

use super::closed::{closed_form_summands, curly_log, evaluate_summand, power_sum, Curly, Geometry, RSeries, Regime};
use super::vars::{dt_vars, M1, M2, M3, M4, U, V, VQ, VT};
use crate::vertex::SpecializedAlphabet;

/// Per-variable truncation of the pipeline: `u' ≤ nu`, `v' ≤ nv`, each
/// `m'_k ≤ m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineOrders {
    pub nu: u32,
    pub nv: u32,
    pub m: u32,
}

impl PipelineOrders {
    pub fn template(&self) -> Vec<Grading> {
        alloc::vec![
            Grading::degree(&[U], self.nu as i64),
            Grading::degree(&[V], self.nv as i64),
            Grading::degree(&[M1], self.m as i64),
            Grading::degree(&[M2], self.m as i64),
            Grading::degree(&[M3], self.m as i64),
        ]
    }
}

fn tq(t2: i32, q2: i32) -> Monomial {
    Monomial::doubled(&[(VT, t2), (VQ, q2)])
}

/// `m4 = -(q/t)^{1/2}`, then `m_k = -m'_k (t/q)^{1/2}`, `u = u' q/t`,
/// `v = v' q/t`; primed variables reuse the unprimed slots. Only keys carry
/// Kähler variables, so the `t, q` part moves into the coefficient.
fn specialize_key(k: &Monomial) -> (Monomial, Rational, Monomial) {
    let e = |i: usize| k.get(i) / 2;
    let (a, b) = (e(M1) + e(M2) + e(M3), e(U) + e(V));
    let sign_exp = e(M4) + a;
    let sign = if sign_exp % 2 == 0 { rat(1) } else { rat(-1) };
    // m4^e -> (q/t)^{e/2}, m^a -> (t/q)^{a/2}, (uv)^b -> (q/t)^b
    let shift = tq(-e(M4) + a - 2 * b, e(M4) - a + 2 * b);
    let mut key = *k;
    key.0[M4] = 0;
    (key, sign, shift)
}

pub fn specialize(s: &RSeries, template: &[Grading]) -> RSeries {
    let mut terms: BTreeMap<Monomial, RationalFunction> = BTreeMap::new();
    for (k, c) in s.terms() {
        let (key, sign, shift) = specialize_key(k);
        let v = c.scale(&sign).mul_monomial(shift);
        let e = terms.entry(key).or_insert_with(RationalFunction::zero);
        *e = &*e + &v;
    }
    RSeries::from_raw(terms, template.to_vec()).truncated(template)
}

fn base_character() -> Result<RationalFunction> {
    Ok(&power_sum(&SpecializedAlphabet::rho(VT))? * &power_sum(&SpecializedAlphabet::rho(VQ))?)
}

/// What the bare `m4` factor becomes at `m4 = -(q/t)^{1/2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Bare {
    /// The common product `∏(1 - q^{i+1} t^j)`.
    Common,
    /// Contains the factor `(1 - 1)`.
    Vanishes,
}

fn classify_bare(f: &Curly) -> Result<Bare> {
    let c = &f.character()? - &base_character()?;
    if c.is_zero() {
        return Ok(Bare::Common);
    }
    let p = c.cancel();
    let poly = p
        .as_poly()
        .ok_or_else(|| Error::Invariant(String::from("shifted curly product differs from the base by a non-polynomial")))?;
    // (1 + m4 w) at m4 = -(q/t)^{1/2} is (1 - 1) when w = (t/q)^{1/2}
    let hit = poly.coeff(&tq(1, -1));
    if hit > rat(0) {
        Ok(Bare::Vanishes)
    } else {
        Err(Error::Invariant(String::from("bare m4 factor neither vanishes nor is the common product")))
    }
}

/// One regime's closed form on the first geometry after the specialization
/// and substitutions, with the common product `∏(1 - q^{i+1} t^j)` dropped.
pub fn substituted_side(reg: Regime, o: &PipelineOrders) -> Result<(RSeries, Report)> {
    let tm = o.template();
    let mut r = Report::new(&format!("m4 specialization, regime {:?}", reg));
    let mut acc = RSeries::zero(&tm).truncated(&tm);
    let mut vanished = 0;
    for mut s in closed_form_summands(Geometry::X1, reg, &tm)? {
        let i = s
            .factors
            .iter()
            .position(|f| f.kahler == Monomial::var(M4))
            .ok_or_else(|| Error::Invariant(String::from("no bare m4 factor")))?;
        let bare = s.factors.remove(i);
        r.checked += 1;
        match classify_bare(&bare)? {
            Bare::Vanishes => {
                vanished += 1;
                continue;
            }
            Bare::Common => {}
        }
        acc = acc.add(&specialize(&evaluate_summand(&s, &tm)?, &tm));
    }
    r.note(format!("{} strata vanish at m4 = -(q/t)^(1/2)", vanished));
    // the surviving bare factor really is ∏(1 - q^{i+1} t^j)
    let spec = base_character()?.mul_monomial(tq(-1, 1));
    let want = RationalFunction::from_parts(LaurentPoly::monomial(Monomial::var(VQ)), &[Monomial::var(VQ), Monomial::var(VT)])?;
    if spec != want {
        r.fail(String::from("common factor"), format!("{:?}", spec), format!("{:?}", want));
    }
    Ok((acc, r))
}

/// `∏_{i,j} (1 + sign·K·w)` over `w` in `chi`, as a series.
fn product(template: &[Grading], k: Monomial, sign: i8, chi: &RationalFunction) -> Result<RSeries> {
    curly_log(template, k, sign, chi)?.exp()
}

/// `q/((1-q)(1-t))`, the character of `q^{i+1} t^j`.
fn x_qt() -> RationalFunction {
    RationalFunction::from_parts(LaurentPoly::monomial(Monomial::var(VQ)), &[Monomial::var(VQ), Monomial::var(VT)]).expect("nontrivial")
}

/// `∏ (1 - a K1 X)(1 - a K2 X) / ((1 - a X)(1 - a K1 K2 X))` with `X = q^{i+1} t^j`.
fn ratio_product(template: &[Grading], a: usize, k1: usize, k2: usize) -> Result<RSeries> {
    let x = x_qt();
    let va = Monomial::var(a);
    let (m1, m2) = (Monomial::var(k1), Monomial::var(k2));
    let log = curly_log(template, va * m1, -1, &x)?
        .add(&curly_log(template, va * m2, -1, &x)?)
        .sub(&curly_log(template, va, -1, &x)?)
        .sub(&curly_log(template, va * m1 * m2, -1, &x)?);
    log.exp()
}

/// `∏_k ∏ (1 - m'_k q^i t^{j+1})`.
fn common_product(template: &[Grading]) -> Result<RSeries> {
    let x = RationalFunction::from_parts(LaurentPoly::monomial(Monomial::var(VT)), &[Monomial::var(VQ), Monomial::var(VT)])?;
    let mut acc = RSeries::one(template).truncated(template);
    for k in [M1, M2, M3] {
        acc = acc.mul(&product(template, Monomial::var(k), -1, &x)?);
    }
    Ok(acc)
}

fn box_w(b1: u32, b2: u32) -> Monomial {
    Monomial::from_exps(&[(VQ, b1 as i32), (VT, -(b2 as i32))])
}

fn one_minus(template: &[Grading], key: Monomial, w: Monomial) -> RSeries {
    RSeries::from_terms(template, [(Monomial::ONE, RationalFunction::one()), (key, -&RationalFunction::monomial(w))])
}

fn hook_factors(l: &Partition2D, shifted: bool) -> Vec<Monomial> {
    let mut out = Vec::new();
    for (_, (a, lg)) in l.arms_legs() {
        out.push(Monomial::from_exps(&[(VQ, lg as i32), (VT, a as i32 + 1)]));
        if shifted {
            out.push(Monomial::from_exps(&[(VQ, -(lg as i32) - 1), (VT, -(a as i32))]));
        } else {
            out.push(Monomial::from_exps(&[(VQ, lg as i32 + 1), (VT, a as i32)]));
        }
    }
    out
}

/// Which variables play which role in a box sum.
#[derive(Clone, Copy)]
struct Roles {
    /// The summed variable.
    sum: usize,
    /// The variable in `1/(1 - x w^{-1})` or `1/(x - w)`.
    other: usize,
    /// `(1 - m w)` factors.
    plain: [usize; 2],
    /// The `m` in `(1 - other·m·w^{-1})`.
    crossed: usize,
}

const ROLES_A: Roles = Roles { sum: V, other: U, plain: [M2, M3], crossed: M1 };
const ROLES_B: Roles = Roles { sum: U, other: V, plain: [M1, M2], crossed: M3 };

/// The partition sum of the substituted closed form (`swapped = false`) or of
/// the reduced identity (`swapped = true`, with `(1 - q^{-l-1} t^{-a})` and
/// `1/(x - w)`).
fn box_sum(template: &[Grading], roles: Roles, n: u32, swapped: bool) -> Result<RSeries> {
    let mut acc = RSeries::zero(template).truncated(template);
    let (x, crossed) = (Monomial::var(roles.other), Monomial::var(roles.crossed));
    for l in partitions_up_to(n) {
        let size = l.size() as i32;
        let pref = if swapped {
            Monomial::ONE
        } else {
            Monomial::from_exps(&[(VQ, size), (VT, l.norm2() as i32 - size)])
        };
        let coef = RationalFunction::from_parts(LaurentPoly::monomial(pref), &hook_factors(&l, swapped))?;
        let mut s = RSeries::constant(template, coef);
        for (b1, b2) in l.boxes() {
            let w = box_w(b1, b2);
            for m in roles.plain {
                s = s.mul(&one_minus(template, Monomial::var(m), w));
            }
            s = s.mul(&one_minus(template, x * crossed, w.inv()));
            let g = RSeries::geometric(template, RationalFunction::monomial(w.inv()), x)?;
            // 1/(x - w) = -w^{-1} / (1 - x w^{-1})
            s = if swapped { s.mul(&g.scale(&-&RationalFunction::monomial(w.inv()))) } else { s.mul(&g) };
        }
        acc = acc.add(&s.shift(Monomial::var(roles.sum).pow(size)));
    }
    Ok(acc)
}

fn compare(name: &str, a: &RSeries, b: &RSeries) -> Report {
    let mut r = Report::new(name);
    r.checked = a.len().max(b.len());
    if let Some((m, x, y)) = a.first_difference(b) {
        let v = dt_vars();
        r.fail(m.fmt_with(&v), x.fmt_with(&v), y.fmt_with(&v));
    }
    r
}

/// `F(z, m1, m2, m3, y)(q, t^{-1}) / F(z, m1, m2, m3, 0)(q, t^{-1})` with the
/// hilb variables renamed by `rename` and `m` split out into keys.
fn f_route(o: &PipelineOrders, z_to: usize, y_to: usize, m_to: [usize; 3]) -> Result<RSeries> {
    let (nz, ny) = if z_to == U { (o.nu, o.nv) } else { (o.nv, o.nu) };
    let f = hilb::compute_f(&hilb::FContext::new(nz, ny))?;
    let f0 = f.filter(|m| m.get(hilb::Y) == 0);
    let n = f.mul(&f0.inv()?);
    let tm = o.template();
    let mut terms: BTreeMap<Monomial, RationalFunction> = BTreeMap::new();
    let tsub = |m: &Monomial| Monomial::doubled(&[(VQ, m.get(hilb::T1)), (VT, -m.get(hilb::T2))]);
    for (k, c) in n.terms() {
        let base = Monomial::var(z_to).pow(k.get(hilb::Z) / 2) * Monomial::var(y_to).pow(k.get(hilb::Y) / 2);
        let c = c.clone().cancel();
        let den: Vec<Monomial> = c.denominator().iter().flat_map(|(w, &e)| (0..e).map(move |_| tsub(w))).collect();
        let mut split: BTreeMap<Monomial, LaurentPoly> = BTreeMap::new();
        for (m, v) in c.numerator().terms() {
            let mut key = base;
            for (i, &slot) in [hilb::M1, hilb::M2, hilb::M3].iter().enumerate() {
                key = key * Monomial::var(m_to[i]).pow(m.get(slot) / 2);
            }
            split.entry(key).or_default().add_term(tsub(m), v.clone());
        }
        for (key, p) in split {
            let rf = RationalFunction::from_parts(p, &den)?;
            let e = terms.entry(key).or_insert_with(RationalFunction::zero);
            *e = &*e + &rf;
        }
    }
    Ok(RSeries::from_terms(&tm, terms))
}

/// The whole chain from the two closed forms of the first geometry down to
/// the reduced identity, each link checked against its stated form.
pub fn substitution_pipeline(o: &PipelineOrders) -> Result<Report> {
    let tm = o.template();
    let mut r = Report::new(&format!("substitution pipeline to u'^{} v'^{} m'^{}", o.nu, o.nv, o.m));
    r.note(String::from("comparison mode: exact rational-function coefficients"));
    let (sa, ra) = substituted_side(Regime::A, o)?;
    let (sb, rb) = substituted_side(Regime::B, o)?;
    r.absorb(ra);
    r.absorb(rb);
    let pc = common_product(&tm)?;
    let pu = ratio_product(&tm, U, M1, M2)?;
    let pv = ratio_product(&tm, V, M2, M3)?;
    let box_a = box_sum(&tm, ROLES_A, o.nv, false)?;
    let box_b = box_sum(&tm, ROLES_B, o.nu, false)?;
    r.absorb(compare("first substituted limit", &sa, &box_a.mul(&pu).mul(&pc)));
    r.absorb(compare("second substituted limit", &sb, &box_b.mul(&pv).mul(&pc)));
    let pci = pc.inv()?;
    r.absorb(compare("first limit over the common factor", &sa.mul(&pci), &box_a.mul(&pu)));
    r.absorb(compare("second limit over the common factor", &sb.mul(&pci), &box_b.mul(&pv)));
    let int1 = sa.mul(&pci).mul(&pu.inv()?).mul(&pv.inv()?);
    let int2 = sb.mul(&pci).mul(&pu.inv()?).mul(&pv.inv()?);
    let int1_direct = box_sum(&tm, ROLES_A, o.nv, true)?.mul(&pv.inv()?);
    let int2_direct = box_sum(&tm, ROLES_B, o.nu, true)?.mul(&pu.inv()?);
    r.absorb(compare("int1 from the pipeline vs its stated form", &int1, &int1_direct));
    r.absorb(compare("int2 from the pipeline vs its stated form", &int2, &int2_direct));
    r.absorb(compare("int1 = int2", &int1_direct, &int2_direct));
    let lead = int1_direct.filter(|m| m.get(V) == 0);
    r.absorb(compare("v'^0 part of int1", &lead, &RSeries::one(&tm).truncated(&tm)));
    let f2 = f_route(o, U, V, [M1, M2, M3])?;
    r.absorb(compare("int2 vs F(u',m1',m2',m3',v')/F(..,0) at (q, 1/t)", &int2_direct, &f2));
    let f1 = f_route(o, V, U, [M2, M3, M1])?;
    r.absorb(compare("int1 vs F(v',m2',m3',m1',u')/F(..,0) at (q, 1/t)", &int1_direct, &f1));
    Ok(r)
}

/// The second geometry after `m_k = -m'_k (t/q)^{1/2}`, `u = u' q/t`: regime
/// A against the pure product and regime B against the partition sum.
pub fn second_geometry_substituted(nu: u32, m: u32) -> Result<Report> {
    let tm = alloc::vec![Grading::degree(&[U], nu as i64), Grading::degree(&[M1], m as i64), Grading::degree(&[M2], m as i64)];
    let mut r = Report::new(&format!("second geometry substituted to u'^{} m'^{}", nu, m));
    let x = RationalFunction::from_parts(LaurentPoly::monomial(Monomial::var(VT)), &[Monomial::var(VQ), Monomial::var(VT)])?;
    let mut pm = RSeries::one(&tm).truncated(&tm);
    for k in [M1, M2] {
        pm = pm.mul(&product(&tm, Monomial::var(k), -1, &x)?);
    }
    let fact1 = ratio_product(&tm, U, M1, M2)?.mul(&pm);
    let mut denom4 = RSeries::zero(&tm).truncated(&tm);
    for l in partitions_up_to(nu) {
        let size = l.size() as i32;
        let pref = Monomial::from_exps(&[(VQ, size), (VT, l.norm2() as i32 - size)]);
        let coef = RationalFunction::from_parts(LaurentPoly::monomial(pref), &hook_factors(&l, false))?;
        let mut s = RSeries::constant(&tm, coef);
        for (b1, b2) in l.boxes() {
            for k in [M1, M2] {
                s = s.mul(&one_minus(&tm, Monomial::var(k), box_w(b1, b2)));
            }
        }
        denom4 = denom4.add(&s.shift(Monomial::var(U).pow(size)));
    }
    let denom4 = denom4.mul(&pm);
    for reg in [Regime::A, Regime::B] {
        let c = super::closed::closed_form_limit(Geometry::X2, reg, &tm)?;
        let s = specialize(&c, &tm);
        let want = if reg == Regime::A { &fact1 } else { &denom4 };
        r.absorb(compare(&format!("regime {:?}", reg), &s, want));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_specialization() {
        // m1 u m4 -> -m1' (t/q)^{1/2} · u' q/t · (-(q/t)^{1/2}) = m1' u' q/t
        let k = Monomial::var(M1) * Monomial::var(U) * Monomial::var(M4);
        let (key, sign, shift) = specialize_key(&k);
        assert_eq!(key, Monomial::var(M1) * Monomial::var(U));
        assert_eq!(sign, rat(1));
        assert_eq!(shift, Monomial::from_exps(&[(VT, -1), (VQ, 1)]));
    }

    #[test]
    fn f_route_is_sensitive_to_the_t_substitution() {
        let o = PipelineOrders { nu: 2, nv: 2, m: 2 };
        let tm = o.template();
        let int2 = box_sum(&tm, ROLES_B, o.nu, true).unwrap().mul(&ratio_product(&tm, U, M1, M2).unwrap().inv().unwrap());
        assert!(compare("", &int2, &f_route(&o, U, V, [M1, M2, M3]).unwrap()).passed);
        // permuting the masses or exchanging u', v' is a symmetry of the
        // normalized series, so the control inverts t instead
        let flip = |m: &Monomial| Monomial::doubled(&[(VT, -m.get(VT)), (VQ, m.get(VQ))]);
        let wrong = f_route(&o, U, V, [M1, M2, M3]).unwrap().map_coeffs(|c| c.map_monomials(flip)).unwrap();
        assert!(!compare("", &int2, &wrong).passed);
    }

    #[test]
    fn second_geometry_after_substitution() {
        let r = second_geometry_substituted(2, 2).unwrap();
        assert!(r.passed, "{}", r);
    }
}
