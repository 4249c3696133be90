//! Per-genus classification of the moduli space of even spin curves.
//!
//! For `g <= 7` the certificate is the negative number `R . K`, with `R` the
//! lifted K3 pencil, a covering curve. For `g >= 8` it is the decomposition
//!
//! ```text
//! K = nu*lambda + 8*theta_null + 3/(2 b0) * pullback(D) + sum(c_i a_i + c'_i b_i)
//! ```
//!
//! whose lambda slot forces `nu = 11 - 3a/(2 b0)`, and whose boundary slots
//! give `c_i = 3 b_i/(2 b0) - 2 - [i=1]` and `c'_i = 2 - [i=1] + 3 b_i/(2 b0)`.

use serde::{Deserialize, Serialize};

use crate::catalog::{canonical_s, choose_d, thetanull_class, DivisorSpec};
use crate::error::{Error, Result};
use crate::exact::{RatMatrix, Rational};
use crate::picard::{ClassM, ClassS, GenusCtx, Label};
use crate::testcurves::{curve, CurveName};
use crate::transfer::{pullback_matrix, pullback_with};

/// Last genus for which the divisor `D` is actually constructed.
pub const CONSTRUCTION_LIMIT: u32 = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Uniruled,
    KappaNonnegative,
    GeneralType,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Uniruled => "UNIRULED",
            Verdict::KappaNonnegative => "KAPPA_NONNEGATIVE",
            Verdict::GeneralType => "GENERAL_TYPE",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Flag {
    /// Boundary remainders unknown because `D` is incomplete.
    Conditional,
    /// Genus beyond the range where `D` is constructed.
    Extrapolated,
    /// Genus 3 or 4, where the generators are used as a formal basis.
    FormalBasis,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub ctx: GenusCtx,
    pub d: DivisorSpec,
    pub nu: Rational,
    /// `c_1..c_h`, `None` when `D` is incomplete.
    pub c: Option<Vec<Rational>>,
    /// `c'_1..c'_h`, `None` when `D` is incomplete.
    pub c_prime: Option<Vec<Rational>>,
}

impl Decomposition {
    pub fn conditional(&self) -> bool {
        self.c.is_none()
    }

    /// All remainders known and nonnegative.
    pub fn remainders_nonnegative(&self) -> Option<bool> {
        let c = self.c.as_ref()?;
        let cp = self.c_prime.as_ref()?;
        Some(c.iter().chain(cp).all(|x| !x.is_negative()))
    }

    /// `nu*lambda + 8*theta + 3/(2 b0) * pb(D) + sum(c_i a_i + c'_i b_i)`
    /// for the given theta-null class and pullback matrix.
    pub fn assemble_with(&self, theta: &ClassS, pb: &RatMatrix) -> Result<ClassS> {
        let (Some(d_class), Some(c), Some(cp)) = (self.d.class(), &self.c, &self.c_prime) else {
            return Err(Error::InvalidDivisor(
                "cannot assemble the decomposition of an incomplete divisor".into(),
            ));
        };
        let ctx = self.ctx;
        let scale = Rational::from(3) / (Rational::from(2) * &self.d.b0);
        let mut remainder = vec![(Label::Lambda, self.nu.clone())];
        for i in 1..=ctx.h() {
            let k = (i - 1) as usize;
            remainder.push((Label::Alpha(i), c[k].clone()));
            remainder.push((Label::Beta(i), cp[k].clone()));
        }
        let remainder = ClassS::from_terms(ctx, remainder)?;
        crate::picard::lincomb(
            &[Rational::from(8), scale, Rational::one()],
            &[theta.clone(), pullback_with(pb, &d_class)?, remainder],
        )
    }

    /// `K - assemble(...)`; zero exactly when the decomposition identity holds.
    pub fn residual_with(
        &self,
        canonical: &ClassS,
        theta: &ClassS,
        pb: &RatMatrix,
    ) -> Result<ClassS> {
        canonical.sub(&self.assemble_with(theta, pb)?)
    }
}

/// `11 - 3a/(2 b0)`.
pub fn nu_value(d: &DivisorSpec) -> Rational {
    Rational::from(11) - Rational::from(3) * &d.a / (Rational::from(2) * &d.b0)
}

pub fn decompose_canonical(ctx: GenusCtx, d: &DivisorSpec) -> Result<Decomposition> {
    ctx.require_classifiable()?;
    ctx.ensure_same(&d.ctx)?;
    let nu = nu_value(d);
    let (c, c_prime) = match &d.b {
        Some(b) => {
            let two = Rational::from(2);
            let mut c = Vec::with_capacity(b.len());
            let mut cp = Vec::with_capacity(b.len());
            for (k, bi) in b.iter().enumerate() {
                let ratio = Rational::from(3) * bi / (&two * &d.b0);
                let extra = if k == 0 {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                c.push(&ratio - &two - &extra);
                cp.push(&two - &extra + &ratio);
            }
            (Some(c), Some(cp))
        }
        None => (None, None),
    };
    let dec = Decomposition {
        ctx,
        d: d.clone(),
        nu,
        c,
        c_prime,
    };
    if d.complete() {
        let residual = dec.residual_with(
            &canonical_s(ctx)?,
            &thetanull_class(ctx)?,
            &pullback_matrix(ctx),
        )?;
        if !residual.is_zero() {
            return Err(Error::IdentityFailure(format!(
                "canonical class decomposition leaves {residual}"
            )));
        }
    }
    Ok(dec)
}

/// `R . K`, the intersection of the lifted K3 pencil with the canonical class.
pub fn uniruled_certificate(ctx: GenusCtx) -> Result<Rational> {
    curve(ctx, CurveName::R)?.pair_s(&canonical_s(ctx)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    Negativity { rk: Rational },
    Decomposition(Box<Decomposition>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KodairaCertificate {
    pub ctx: GenusCtx,
    pub verdict: Verdict,
    pub evidence: Evidence,
    pub flags: Vec<Flag>,
    pub annotations: Vec<String>,
    pub citations: Vec<String>,
}

/// Wire form of a certificate. Rationals are `"p/q"` strings; `c` and
/// `c_prime` are `null` when the divisor is incomplete.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub genus: u32,
    pub verdict: Verdict,
    pub nu: Option<Rational>,
    pub rk: Option<Rational>,
    pub c: Option<Vec<Rational>>,
    pub c_prime: Option<Vec<Rational>>,
    pub flags: Vec<Flag>,
    pub divisor: Option<String>,
    pub slope: Option<Rational>,
    pub annotations: Vec<String>,
    pub citations: Vec<String>,
}

impl KodairaCertificate {
    pub fn nu(&self) -> Option<&Rational> {
        match &self.evidence {
            Evidence::Decomposition(d) => Some(&d.nu),
            Evidence::Negativity { .. } => None,
        }
    }

    pub fn rk(&self) -> Option<&Rational> {
        match &self.evidence {
            Evidence::Negativity { rk } => Some(rk),
            Evidence::Decomposition(_) => None,
        }
    }

    pub fn to_json(&self) -> CertificateJson {
        let dec = match &self.evidence {
            Evidence::Decomposition(d) => Some(d.as_ref()),
            Evidence::Negativity { .. } => None,
        };
        CertificateJson {
            genus: self.ctx.g(),
            verdict: self.verdict,
            nu: self.nu().cloned(),
            rk: self.rk().cloned(),
            c: dec.and_then(|d| d.c.clone()),
            c_prime: dec.and_then(|d| d.c_prime.clone()),
            flags: self.flags.clone(),
            divisor: dec.map(|d| d.d.provenance.to_string()),
            slope: dec.map(|d| d.d.slope()),
            annotations: self.annotations.clone(),
            citations: self.citations.clone(),
        }
    }
}

fn annotations_for(g: u32) -> Vec<String> {
    let mut out = Vec::new();
    match g {
        3 => out.push("rational: birational to M_3 via the Scorza map".into()),
        4 => out.push("rational".into()),
        8 => {
            out.push("kappa = 0 is announced separately; only kappa >= 0 is certified here".into())
        }
        _ => {}
    }
    if g > CONSTRUCTION_LIMIT {
        out.push(format!(
            "divisor D is only constructed for g <= {CONSTRUCTION_LIMIT}; the same rule is evaluated here"
        ));
        if g >= 24 {
            out.push("alternative route: K of M_g is big for g >= 24 (not computed)".into());
        }
    }
    out
}

/// Classifies genus `g >= 3`. A user divisor, when given, replaces the
/// default choice of `D` and must respect the slope bound.
pub fn classify(ctx: GenusCtx, user_d: Option<DivisorSpec>) -> Result<KodairaCertificate> {
    ctx.require_classifiable()?;
    let g = ctx.g();
    let d = choose_d(ctx, user_d)?;

    let mut flags = Vec::new();
    if g <= 4 {
        flags.push(Flag::FormalBasis);
    }
    let annotations = annotations_for(g);

    if g <= 7 {
        let rk = uniruled_certificate(ctx)?;
        if !rk.is_negative() {
            return Err(Error::Uncertified {
                genus: g,
                reason: format!("R.K = {rk} is not negative"),
            });
        }
        return Ok(KodairaCertificate {
            ctx,
            verdict: Verdict::Uniruled,
            evidence: Evidence::Negativity { rk },
            flags,
            annotations,
            citations: vec![
                "R is a covering curve of S_g+ for g <= 7".into(),
                "a normal variety whose canonical class is not pseudo-effective is uniruled"
                    .into(),
            ],
        });
    }

    let dec = decompose_canonical(ctx, &d)?;
    if dec.conditional() {
        flags.push(Flag::Conditional);
    }
    if g > CONSTRUCTION_LIMIT {
        flags.push(Flag::Extrapolated);
    }
    if dec.remainders_nonnegative() == Some(false) {
        return Err(Error::Uncertified {
            genus: g,
            reason: format!("negative boundary remainder for {}", d.provenance),
        });
    }
    let verdict = if g == 8 {
        if dec.nu.is_negative() {
            return Err(Error::Uncertified {
                genus: g,
                reason: format!("nu = {} is negative", dec.nu),
            });
        }
        Verdict::KappaNonnegative
    } else {
        if !dec.nu.is_positive() {
            return Err(Error::Uncertified {
                genus: g,
                reason: format!("nu = {} is not positive", dec.nu),
            });
        }
        Verdict::GeneralType
    };
    Ok(KodairaCertificate {
        ctx,
        verdict,
        evidence: Evidence::Decomposition(Box::new(dec)),
        flags,
        annotations,
        citations: vec![
            "D is effective (cited, not computed)".into(),
            "lambda is big and nef on S_g+ (cited, not computed)".into(),
            "pluricanonical forms extend to a resolution of S_g+ for g >= 4 (cited, not computed)"
                .into(),
            "beta_i coefficient of 8*theta_null + 3/(2 b0)*pullback(D) is 4 + 3 b_i/(2 b0)".into(),
        ],
    })
}

/// The class of `D` on M_g when known, for display.
pub fn divisor_class(d: &DivisorSpec) -> ClassM {
    d.class().unwrap_or_else(|| d.partial_class())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::bn_class;
    use crate::exact::q;

    fn ctx(g: u32) -> GenusCtx {
        GenusCtx::new(g).unwrap()
    }

    #[test]
    fn nu_examples() {
        assert_eq!(nu_value(&choose_d(ctx(8), None).unwrap()), q(0, 1));
        assert_eq!(nu_value(&choose_d(ctx(10), None).unwrap()), q(1, 2));
        assert_eq!(nu_value(&choose_d(ctx(9), None).unwrap()), q(1, 5));
    }

    #[test]
    fn decomposition_genus_nine() {
        let (_, d) = bn_class(ctx(9)).unwrap();
        let dec = decompose_canonical(ctx(9), &d).unwrap();
        assert_eq!(dec.nu, q(1, 5));
        assert_eq!(dec.c.as_ref().unwrap()[0], q(21, 5));
        assert_eq!(dec.c_prime.as_ref().unwrap()[0], q(41, 5));
    }

    #[test]
    fn decomposition_genus_eight() {
        let (_, d) = bn_class(ctx(8)).unwrap();
        let dec = decompose_canonical(ctx(8), &d).unwrap();
        assert_eq!(dec.nu, q(0, 1));
        assert_eq!(dec.c.as_ref().unwrap()[0], q(4, 1));
        assert_eq!(dec.remainders_nonnegative(), Some(true));
    }

    #[test]
    fn decomposition_incomplete_is_conditional() {
        let d = choose_d(ctx(10), None).unwrap();
        let dec = decompose_canonical(ctx(10), &d).unwrap();
        assert_eq!(dec.nu, q(1, 2));
        assert!(dec.conditional());
        assert!(dec
            .assemble_with(
                &thetanull_class(ctx(10)).unwrap(),
                &pullback_matrix(ctx(10))
            )
            .is_err());
    }

    #[test]
    fn decomposition_genus_mismatch() {
        let (_, d) = bn_class(ctx(9)).unwrap();
        assert!(matches!(
            decompose_canonical(ctx(11), &d),
            Err(Error::GenusMismatch { .. })
        ));
    }

    #[test]
    fn rk_values() {
        assert_eq!(uniruled_certificate(ctx(7)).unwrap(), q(-7296, 1));
        assert_eq!(uniruled_certificate(ctx(8)).unwrap(), q(51456, 1));
        assert_eq!(uniruled_certificate(ctx(5)).unwrap(), q(-2976, 1));
    }

    #[test]
    fn classify_examples() {
        let c7 = classify(ctx(7), None).unwrap();
        assert_eq!(c7.verdict, Verdict::Uniruled);
        assert_eq!(c7.rk(), Some(&q(-7296, 1)));
        let c8 = classify(ctx(8), None).unwrap();
        assert_eq!(c8.verdict, Verdict::KappaNonnegative);
        assert_eq!(c8.nu(), Some(&q(0, 1)));
        let c11 = classify(ctx(11), None).unwrap();
        assert_eq!(c11.verdict, Verdict::GeneralType);
        assert_eq!(c11.nu(), Some(&q(1, 2)));
        assert!(c11.flags.is_empty());
    }

    #[test]
    fn classify_flags() {
        assert_eq!(
            classify(ctx(3), None).unwrap().flags,
            vec![Flag::FormalBasis]
        );
        assert_eq!(
            classify(ctx(10), None).unwrap().flags,
            vec![Flag::Conditional]
        );
        assert_eq!(
            classify(ctx(23), None).unwrap().flags,
            vec![Flag::Extrapolated]
        );
        assert_eq!(
            classify(ctx(28), None).unwrap().flags,
            vec![Flag::Conditional, Flag::Extrapolated]
        );
    }

    #[test]
    fn classify_with_user_divisor() {
        let c = ctx(10);
        let b = (1..=5).map(|i| q(2 * i, 1)).collect();
        let user = DivisorSpec::user(c, "test", q(7, 1), q(1, 1), Some(b)).unwrap();
        let cert = classify(c, Some(user)).unwrap();
        assert_eq!(cert.verdict, Verdict::GeneralType);
        assert!(cert.flags.is_empty());
        // b_1/b_0 < 2 makes c_1 negative
        let weak = DivisorSpec::user(c, "weak", q(7, 1), q(1, 1), Some(vec![q(1, 1); 5])).unwrap();
        assert!(matches!(
            classify(c, Some(weak)),
            Err(Error::Uncertified { .. })
        ));
        let steep = DivisorSpec::user(c, "steep", q(15, 2), q(1, 1), None).unwrap();
        assert!(matches!(
            classify(c, Some(steep)),
            Err(Error::SlopeViolation { .. })
        ));
    }

    #[test]
    fn certificate_json_shape() {
        let cert = classify(ctx(8), None).unwrap().to_json();
        let v = serde_json::to_value(&cert).unwrap();
        assert_eq!(v["verdict"], "KAPPA_NONNEGATIVE");
        assert_eq!(v["nu"], "0");
        assert!(v["rk"].is_null());
        let back: CertificateJson = serde_json::from_value(v).unwrap();
        assert_eq!(back, cert);
    }
}
