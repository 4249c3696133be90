//! The per-genus verification suite.
//!
//! Checks run against a [`GenusModel`], a snapshot of every numeric table the
//! library uses at one genus: pushforward and pullback matrices, the test
//! curve table and the theta-null class. Each table entry is compared, through
//! some identity, against a closed form written out independently here, so a
//! single corrupted entry (see [`Mutation`]) makes at least one check fail.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{
    bn_class, canonical_m, canonical_s, choose_d, is_prime, m1_theta_class, rho, slope_rule,
    thetanull_class, Provenance, SlopeCase,
};
use crate::error::Result;
use crate::exact::{RatMatrix, Rational};
use crate::kodaira::{classify, decompose_canonical, nu_value, Flag, Verdict};
use crate::picard::{ClassM, ClassS, GenusCtx, Label, ModuliM, Space};
use crate::testcurves::{solve_thetanull_with, standard_curves, CurveFunctional, CurveName};
use crate::transfer::{
    pullback_matrix, pullback_with, pushforward_matrix, pushforward_with, spin_counts,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusModel {
    pub ctx: GenusCtx,
    pub pushforward: RatMatrix,
    pub pullback: RatMatrix,
    pub curves: Vec<CurveFunctional>,
    pub thetanull: ClassS,
}

/// A single `+1` perturbation of one table entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mutation {
    Pushforward { row: usize, col: usize },
    Pullback { row: usize, col: usize },
    Curve { curve: usize, slot: usize },
    Thetanull { slot: usize },
}

impl GenusModel {
    pub fn standard(ctx: GenusCtx) -> Result<Self> {
        Ok(GenusModel {
            ctx,
            pushforward: pushforward_matrix(ctx),
            pullback: pullback_matrix(ctx),
            curves: standard_curves(ctx)?,
            thetanull: thetanull_class(ctx)?,
        })
    }

    /// Every entry that [`GenusModel::apply`] can perturb.
    pub fn mutation_sites(&self) -> Vec<Mutation> {
        let mut out = Vec::new();
        for row in 0..self.pushforward.rows() {
            for col in 0..self.pushforward.cols() {
                out.push(Mutation::Pushforward { row, col });
            }
        }
        for row in 0..self.pullback.rows() {
            for col in 0..self.pullback.cols() {
                out.push(Mutation::Pullback { row, col });
            }
        }
        for (curve, c) in self.curves.iter().enumerate() {
            for slot in 0..c.numbers.len() {
                out.push(Mutation::Curve { curve, slot });
            }
        }
        for slot in 0..self.thetanull.dim() {
            out.push(Mutation::Thetanull { slot });
        }
        out
    }

    pub fn apply(&mut self, m: Mutation) {
        let one = Rational::one();
        match m {
            Mutation::Pushforward { row, col } => self.pushforward[(row, col)] += &one,
            Mutation::Pullback { row, col } => self.pullback[(row, col)] += &one,
            Mutation::Curve { curve, slot } => self.curves[curve].numbers[slot] += &one,
            Mutation::Thetanull { slot } => {
                let mut coeffs = self.thetanull.coeffs().to_vec();
                coeffs[slot] += &one;
                self.thetanull = ClassS::from_coeffs(self.ctx, coeffs).expect("same dimension");
            }
        }
    }

    fn curve(&self, name: CurveName) -> Option<&CurveFunctional> {
        self.curves.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub expected: String,
    pub got: String,
}

struct Checks {
    out: Vec<CheckOutcome>,
}

impl Checks {
    fn eq<T: PartialEq + ToString>(&mut self, name: impl Into<String>, expected: &T, got: &T) {
        self.out.push(CheckOutcome {
            name: name.into(),
            passed: expected == got,
            expected: expected.to_string(),
            got: got.to_string(),
        });
    }

    fn truth(&mut self, name: impl Into<String>, expected: &str, ok: bool, got: impl ToString) {
        self.out.push(CheckOutcome {
            name: name.into(),
            passed: ok,
            expected: expected.to_string(),
            got: got.to_string(),
        });
    }

    fn record<T>(&mut self, name: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.truth(name, "no error", false, e);
                None
            }
        }
    }
}

fn pow2(k: u32) -> Rational {
    Rational::from_int(BigInt::one() << k)
}

/// Expected pushforward shadow `pi_*(c) . x` of each spin-side test curve,
/// over the M-side basis.
fn shadow(ctx: GenusCtx, name: CurveName) -> Option<Vec<(Label, Rational)>> {
    let g = i64::from(ctx.g());
    let gu = ctx.g();
    let r = Rational::from;
    Some(match name {
        CurveName::B => return None,
        CurveName::R => {
            let deg = pow2(gu - 1) * (pow2(gu) + r(1));
            vec![
                (Label::Lambda, &deg * r(g + 1)),
                (Label::Delta(0), &deg * r(6 * g + 18)),
            ]
        }
        // elliptic-tail pencil: lambda 1, delta_0 12, delta_1 -1
        CurveName::F0 => vec![
            (Label::Lambda, r(1)),
            (Label::Delta(0), r(12)),
            (Label::Delta(1), r(-1)),
        ],
        // three times the elliptic-tail pencil
        CurveName::G0 => vec![
            (Label::Lambda, r(3)),
            (Label::Delta(0), r(36)),
            (Label::Delta(1), r(-3)),
        ],
        CurveName::H0 => vec![(Label::Delta(0), r(2 - 2 * g)), (Label::Delta(1), r(1))],
        CurveName::F(i) | CurveName::G(i) => vec![(Label::Delta(i), r(2 - 2 * i64::from(i)))],
    })
}

fn expected_verdict(g: u32) -> Verdict {
    match g {
        0..=7 => Verdict::Uniruled,
        8 => Verdict::KappaNonnegative,
        _ => Verdict::GeneralType,
    }
}

fn first_difference(expected: &RatMatrix, got: &RatMatrix) -> Option<String> {
    if expected.rows() != got.rows() || expected.cols() != got.cols() {
        return Some(format!("{}x{} matrix", got.rows(), got.cols()));
    }
    (0..got.rows())
        .flat_map(|i| (0..got.cols()).map(move |j| (i, j)))
        .find(|&ij| expected[ij] != got[ij])
        .map(|(i, j)| {
            format!(
                "entry ({i},{j}) = {}, want {}",
                got[(i, j)],
                expected[(i, j)]
            )
        })
}

fn fmt_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// Runs every check for the model's genus.
pub fn run_checks(model: &GenusModel) -> Vec<CheckOutcome> {
    let ctx = model.ctx;
    let g = ctx.g();
    let h = ctx.h();
    let gi = i64::from(g);
    let mut ck = Checks { out: Vec::new() };
    let n_even = pow2(g - 1) * (pow2(g) + Rational::one());

    // transfer
    for id in spin_counts(ctx).identities() {
        ck.eq(format!("counts: {}", id.name), &id.rhs, &id.lhs);
    }
    if let Some(prod) = ck.record(
        "transfer: projection",
        model.pushforward.mul(&model.pullback),
    ) {
        let expected = RatMatrix::identity(ModuliM::dim(ctx)).scale(&n_even);
        ck.truth(
            "transfer: pushforward(pullback(x)) = 2^(g-1)(2^g+1) x",
            "scalar matrix",
            prod == expected,
            first_difference(&expected, &prod).unwrap_or_else(|| "scalar matrix".into()),
        );
    }

    // catalog
    if let (Ok(km), Ok(ks)) = (canonical_m(ctx), canonical_s(ctx)) {
        if let Some(pb) = ck.record("catalog: pullback K_M", pullback_with(&model.pullback, &km)) {
            if let Some(diff) = ck.record("catalog: K_S - pullback K_M", ks.sub(&pb)) {
                let b0 = ClassS::basis(ctx, Label::Beta(0)).expect("b0s");
                ck.eq(
                    "catalog: K_S - pullback(K_M) = b0s",
                    &b0.render(),
                    &diff.render(),
                );
            }
        }
    }
    if let (Some(pushed), Ok(m1)) = (
        ck.record(
            "catalog: pushforward theta",
            pushforward_with(&model.pushforward, &model.thetanull),
        ),
        m1_theta_class(ctx),
    ) {
        ck.eq(
            "catalog: pushforward(theta_null) = M1",
            &m1.render(),
            &pushed.render(),
        );
    }
    let zero_slots: Vec<Rational> = std::iter::once(Label::Beta(0))
        .chain((1..=h).map(Label::Alpha))
        .map(|l| model.thetanull.coeff(l).cloned().unwrap_or_default())
        .collect();
    ck.truth(
        "catalog: theta_null has zero b0s and a_i slots",
        "all zero",
        zero_slots.iter().all(Rational::is_zero),
        fmt_vec(&zero_slots),
    );
    if let Ok(rule) = slope_rule(ctx) {
        let cases = [
            !is_prime(g + 1),
            g == 10 && is_prime(g + 1),
            is_prime(g + 1) && g != 10 && g.is_multiple_of(2),
        ];
        let matched = cases.iter().filter(|c| **c).count();
        let consistent = match rule.case {
            SlopeCase::Composite => cases[0],
            SlopeCase::GenusTen => cases[1],
            SlopeCase::EvenPrimePlusOne => cases[2],
        };
        ck.truth(
            "catalog: slope rule has exactly one case",
            "1 matching case",
            matched == 1 && consistent,
            format!("{matched} matching, chosen {:?}", rule.case),
        );
    }
    if !is_prime(g + 1) {
        if let Some((_, spec)) = ck.record("catalog: bn class", bn_class(ctx)) {
            if let Provenance::BrillNoether { r, d } = spec.provenance {
                ck.eq(
                    "catalog: rho(g, r, d) = -1",
                    &-1,
                    &rho(gi, r.into(), d.into()),
                );
            }
            let b = spec.b.clone().unwrap_or_default();
            let ratios: Vec<Rational> = b.iter().map(|bi| bi / &spec.b0).collect();
            ck.truth(
                "catalog: b_i/b_0 >= 4/3",
                ">= 4/3",
                ratios.len() == h as usize && ratios.iter().all(|x| *x >= Rational::new(4, 3)),
                fmt_vec(&ratios),
            );
        }
    }

    // testcurves
    let theta = &model.thetanull;
    for c in model
        .curves
        .iter()
        .filter(|c| c.side == crate::picard::Side::S)
    {
        let expected = match c.name {
            CurveName::G(i) => Some(Rational::from(i64::from(i) - 1)),
            CurveName::F0 | CurveName::G0 | CurveName::H0 | CurveName::F(_) => {
                Some(Rational::zero())
            }
            _ => None,
        };
        if let Some(e) = expected {
            if let Some(v) = ck.record("curves: pairing", c.pair_s(theta)) {
                ck.eq(format!("curves: {}.theta_null = {e}", c.name), &e, &v);
            }
        }
        if let Some(sh) = shadow(ctx, c.name) {
            for label in ModuliM::labels(ctx) {
                let want = sh
                    .iter()
                    .find(|(l, _)| *l == label)
                    .map(|(_, v)| v.clone())
                    .unwrap_or_default();
                let x = ClassM::basis(ctx, label).expect("basis label");
                if let Some(pb) = ck.record("curves: pullback", pullback_with(&model.pullback, &x))
                {
                    if let Some(got) = ck.record("curves: shadow pairing", c.pair_s(&pb)) {
                        ck.eq(
                            format!(
                                "curves: {}.pullback({label}) = pi_*({}).{label}",
                                c.name, c.name
                            ),
                            &want,
                            &got,
                        );
                    }
                }
            }
        }
    }
    if let (Some(b), Some(r)) = (model.curve(CurveName::B), model.curve(CurveName::R)) {
        let b_expected = [
            (Label::Lambda, Rational::from(gi + 1)),
            (Label::Delta(0), Rational::from(6 * gi + 18)),
        ];
        for label in ModuliM::labels(ctx) {
            let x = ClassM::basis(ctx, label).expect("basis label");
            let want = b_expected
                .iter()
                .find(|(l, _)| *l == label)
                .map(|(_, v)| v.clone())
                .unwrap_or_default();
            if let Some(got) = ck.record("curves: B pairing", b.pair_m(&x)) {
                ck.eq(format!("curves: B.{label}"), &want, &got);
            }
            if let (Some(pb), Some(bx)) = (
                ck.record("curves: pullback", pullback_with(&model.pullback, &x)),
                b.pair_m(&x).ok(),
            ) {
                if let Some(rx) = ck.record("curves: R pairing", r.pair_s(&pb)) {
                    ck.eq(
                        format!("curves: R.pullback({label}) = n_even * B.{label}"),
                        &(&n_even * &bx),
                        &rx,
                    );
                }
            }
        }
    }
    if let Some(sol) = ck.record(
        "curves: solve theta_null",
        solve_thetanull_with(ctx, &model.curves),
    ) {
        ck.eq(
            "curves: solved theta_null = theta_null",
            &theta.render(),
            &sol.class.render(),
        );
        ck.truth(
            "curves: solution residual is zero",
            "0",
            sol.residual.is_zero(),
            fmt_vec(&sol.residual.0),
        );
        let closed = [Rational::new(1, 4), Rational::new(1, 16), Rational::zero()];
        ck.eq(
            "curves: (lambda_bar, alpha_bar_0, beta_bar_0) = (1/4, 1/16, 0)",
            &fmt_vec(&closed),
            &fmt_vec(&sol.unknowns.0[..3]),
        );
    }

    // kodaira
    if let (Some(r), Ok(ks)) = (model.curve(CurveName::R), canonical_s(ctx)) {
        // 13(g+1)n_even - 2(6g+18)2^(2g-2) - 3(6g+18)2^(g-2)(2^(g-1)+1)
        let oracle = Rational::from(13 * (gi + 1)) * &n_even
            - Rational::from(2 * (6 * gi + 18)) * pow2(2 * g - 2)
            - Rational::from(3 * (6 * gi + 18)) * pow2(g - 2) * (pow2(g - 1) + Rational::one());
        if let Some(rk) = ck.record("kodaira: R.K", r.pair_s(&ks)) {
            ck.eq("kodaira: R.K", &oracle, &rk);
            ck.truth(
                "kodaira: R.K < 0 iff g <= 7",
                if g <= 7 { "negative" } else { "positive" },
                if g <= 7 {
                    rk.is_negative()
                } else {
                    rk.is_positive()
                },
                &rk,
            );
        }
    }
    if g >= 8 {
        if let (Some(d), Ok(rule)) = (
            ck.record("kodaira: choose D", choose_d(ctx, None)),
            slope_rule(ctx),
        ) {
            let nu = nu_value(&d);
            let via_rule = Rational::from(11) - Rational::new(3, 2) * &rule.bound;
            ck.eq("kodaira: nu = 11 - (3/2) * slope bound", &via_rule, &nu);
            ck.truth(
                "kodaira: nu sign",
                if g == 8 { "zero" } else { "positive" },
                if g == 8 {
                    nu.is_zero()
                } else {
                    nu.is_positive()
                },
                &nu,
            );
            if d.complete() {
                if let Some(dec) = ck.record("kodaira: decomposition", decompose_canonical(ctx, &d))
                {
                    if let Ok(ks) = canonical_s(ctx) {
                        if let Some(res) = ck.record(
                            "kodaira: decomposition residual",
                            dec.residual_with(&ks, theta, &model.pullback),
                        ) {
                            ck.eq("kodaira: K = nu*lambda + 8*theta + 3/(2b0)*pullback(D) + remainders", &"0".to_string(), &res.render());
                        }
                    }
                    let all: Vec<Rational> = dec
                        .c
                        .iter()
                        .chain(dec.c_prime.iter())
                        .flatten()
                        .cloned()
                        .collect();
                    ck.truth(
                        "kodaira: c_i, c'_i >= 0",
                        ">= 0",
                        dec.remainders_nonnegative() == Some(true),
                        fmt_vec(&all),
                    );
                }
            }
        }
    }
    if let Some(cert) = ck.record("kodaira: classify", classify(ctx, None)) {
        ck.eq(
            "kodaira: verdict",
            &expected_verdict(g).to_string(),
            &cert.verdict.to_string(),
        );
    }

    ck.out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusReport {
    pub genus: u32,
    pub checks: usize,
    pub failures: Vec<CheckOutcome>,
    pub flags: Vec<Flag>,
}

impl GenusReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_genus(ctx: GenusCtx) -> Result<GenusReport> {
    let model = GenusModel::standard(ctx)?;
    let outcomes = run_checks(&model);
    let flags = classify(ctx, None).map(|c| c.flags).unwrap_or_default();
    Ok(GenusReport {
        genus: ctx.g(),
        checks: outcomes.len(),
        failures: outcomes.into_iter().filter(|c| !c.passed).collect(),
        flags,
    })
}

/// Verifies every genus in `from..=to` in parallel; results are in genus order.
pub fn verify_range(from: u32, to: u32) -> Result<Vec<GenusReport>> {
    (from..=to)
        .into_par_iter()
        .map(|g| verify_genus(GenusCtx::new(g)?))
        .collect()
}

/// Whether the suite catches `m` at `ctx`.
pub fn detects(ctx: GenusCtx, m: Mutation) -> Result<bool> {
    let mut model = GenusModel::standard(ctx)?;
    model.apply(m);
    Ok(run_checks(&model).iter().any(|c| !c.passed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::picard::SpinS;

    #[test]
    fn clean_model_passes() {
        for g in [3, 4, 8, 9, 10, 12] {
            let report = verify_genus(GenusCtx::new(g).unwrap()).unwrap();
            assert!(report.ok(), "g={g}: {:?}", report.failures);
            assert!(report.checks > 20);
        }
    }

    #[test]
    fn every_site_detected_genus_five() {
        let ctx = GenusCtx::new(5).unwrap();
        let model = GenusModel::standard(ctx).unwrap();
        for m in model.mutation_sites() {
            assert!(detects(ctx, m).unwrap(), "{m:?} not detected");
        }
    }

    #[test]
    fn mutated_thetanull_reports_check_name() {
        let ctx = GenusCtx::new(9).unwrap();
        let mut model = GenusModel::standard(ctx).unwrap();
        model.apply(Mutation::Thetanull { slot: 0 });
        let failed: Vec<_> = run_checks(&model)
            .into_iter()
            .filter(|c| !c.passed)
            .collect();
        assert!(failed
            .iter()
            .any(|c| c.name.contains("pushforward(theta_null)")));
        assert!(failed.iter().any(|c| c.name.contains("K = nu*lambda")));
    }

    #[test]
    fn spin_dimension_matches_sites() {
        let ctx = GenusCtx::new(6).unwrap();
        let model = GenusModel::standard(ctx).unwrap();
        let m = ModuliM::dim(ctx);
        let s = SpinS::dim(ctx);
        let curves: usize = model.curves.iter().map(|c| c.numbers.len()).sum();
        assert_eq!(model.mutation_sites().len(), 2 * m * s + curves + s);
    }
}
