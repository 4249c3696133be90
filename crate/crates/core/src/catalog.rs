//! Named divisor classes and the effective divisor `D` used to certify
//! bigness of the canonical class.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::picard::{ClassM, ClassS, GenusCtx, Label};
use crate::transfer::pullback;

/// Brill-Noether number `g - (r+1)(g-d+r)`.
pub fn rho(g: i64, r: i64, d: i64) -> i64 {
    g - (r + 1) * (g - d + r)
}

pub fn smallest_prime_factor(n: u32) -> u32 {
    (2..)
        .take_while(|p| p * p <= n)
        .find(|p| n.is_multiple_of(*p))
        .unwrap_or(n)
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && smallest_prime_factor(n) == n
}

/// `13 lambda - 2 d0 - 3 d1 - 2 sum_{i>=2} di`.
pub fn canonical_m(ctx: GenusCtx) -> Result<ClassM> {
    ctx.require_classifiable()?;
    let mut terms = vec![
        (Label::Lambda, Rational::from(13)),
        (Label::Delta(0), Rational::from(-2)),
        (Label::Delta(1), Rational::from(-3)),
    ];
    terms.extend((2..=ctx.h()).map(|i| (Label::Delta(i), Rational::from(-2))));
    ClassM::from_terms(ctx, terms)
}

/// `13 lambda - 2 a0 - 3 b0s - 2 sum (ai + bi) - (a1 + b1)`.
pub fn canonical_s(ctx: GenusCtx) -> Result<ClassS> {
    ctx.require_classifiable()?;
    let mut terms = vec![
        (Label::Lambda, Rational::from(13)),
        (Label::Alpha(0), Rational::from(-2)),
        (Label::Beta(0), Rational::from(-3)),
    ];
    for i in 1..=ctx.h() {
        let c = Rational::from(if i == 1 { -3 } else { -2 });
        terms.push((Label::Alpha(i), c.clone()));
        terms.push((Label::Beta(i), c));
    }
    let k = ClassS::from_terms(ctx, terms)?;
    debug_assert_eq!(
        k.sub(&pullback(&canonical_m(ctx)?))?,
        ClassS::basis(ctx, Label::Beta(0))?
    );
    Ok(k)
}

/// Closure of the theta-null divisor:
/// `1/4 lambda - 1/16 a0 - 1/2 sum_{i>=1} bi`.
pub fn thetanull_class(ctx: GenusCtx) -> Result<ClassS> {
    ctx.require_classifiable()?;
    let mut terms = vec![
        (Label::Lambda, Rational::new(1, 4)),
        (Label::Alpha(0), Rational::new(-1, 16)),
    ];
    terms.extend((1..=ctx.h()).map(|i| (Label::Beta(i), Rational::new(-1, 2))));
    ClassS::from_terms(ctx, terms)
}

/// Locus of curves with a vanishing theta-null:
/// `2^{g-3}((2^g+1) lambda - 2^{g-3} d0 - sum (2^{g-i}-1)(2^i-1) di)`.
pub fn m1_theta_class(ctx: GenusCtx) -> Result<ClassM> {
    ctx.require_classifiable()?;
    let g = ctx.g();
    let one = Rational::one();
    let mut terms = vec![
        (Label::Lambda, Rational::pow2(g) + &one),
        (Label::Delta(0), -Rational::pow2(g - 3)),
    ];
    terms.extend((1..=ctx.h()).map(|i| {
        let c = (Rational::pow2(g - i) - &one) * (Rational::pow2(i) - &one);
        (Label::Delta(i), -c)
    }));
    Ok(ClassM::from_terms(ctx, terms)?.scale(&Rational::pow2(g - 3)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Provenance {
    BrillNoether { r: u32, d: u32 },
    K3,
    GiesekerPetri { k: u32 },
    UserSupplied { name: String },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::BrillNoether { r, d } => write!(f, "Brill-Noether divisor (r={r}, d={d})"),
            Provenance::K3 => write!(f, "K3 divisor K_10"),
            Provenance::GiesekerPetri { k } => write!(f, "Gieseker-Petri divisor (k={k})"),
            Provenance::UserSupplied { name } => write!(f, "user-supplied divisor `{name}`"),
        }
    }
}

/// An effective divisor `a lambda - sum_{i>=0} b_i d_i` on M_g.
///
/// Only `a` and `b0` are always known; `b` holds `b_1..b_h` when the full
/// boundary expansion is available.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorSpec {
    pub ctx: GenusCtx,
    pub provenance: Provenance,
    pub a: Rational,
    pub b0: Rational,
    pub b: Option<Vec<Rational>>,
}

impl DivisorSpec {
    fn validated(self) -> Result<Self> {
        if !self.a.is_positive() || !self.b0.is_positive() {
            return Err(Error::InvalidDivisor(format!(
                "a = {} and b0 = {} must be positive",
                self.a, self.b0
            )));
        }
        if let Some(b) = &self.b {
            if b.len() != self.ctx.h() as usize {
                return Err(Error::InvalidDivisor(format!(
                    "expected {} boundary coefficients b1..b{}, got {}",
                    self.ctx.h(),
                    self.ctx.h(),
                    b.len()
                )));
            }
            if let Some((i, bi)) = b.iter().enumerate().find(|(_, bi)| !bi.is_positive()) {
                return Err(Error::InvalidDivisor(format!(
                    "b{} = {bi} must be positive",
                    i + 1
                )));
            }
        }
        Ok(self)
    }

    pub fn user(
        ctx: GenusCtx,
        name: impl Into<String>,
        a: Rational,
        b0: Rational,
        b: Option<Vec<Rational>>,
    ) -> Result<Self> {
        DivisorSpec {
            ctx,
            provenance: Provenance::UserSupplied { name: name.into() },
            a,
            b0,
            b,
        }
        .validated()
    }

    /// Attaches boundary coefficients `b_1..b_h` to an incomplete spec.
    pub fn with_boundary(mut self, b: Vec<Rational>) -> Result<Self> {
        self.b = Some(b);
        self.validated()
    }

    pub fn complete(&self) -> bool {
        self.b.is_some()
    }

    pub fn slope(&self) -> Rational {
        &self.a / &self.b0
    }

    /// The class on M_g, when every boundary coefficient is known.
    pub fn class(&self) -> Option<ClassM> {
        let b = self.b.as_ref()?;
        let terms = [
            (Label::Lambda, self.a.clone()),
            (Label::Delta(0), -&self.b0),
        ]
        .into_iter()
        .chain(
            b.iter()
                .enumerate()
                .map(|(i, bi)| (Label::Delta(i as u32 + 1), -bi)),
        );
        Some(ClassM::from_terms(self.ctx, terms).expect("labels in range"))
    }

    /// The known part `a lambda - b0 d0`.
    pub fn partial_class(&self) -> ClassM {
        ClassM::from_terms(
            self.ctx,
            [
                (Label::Lambda, self.a.clone()),
                (Label::Delta(0), -&self.b0),
            ],
        )
        .expect("labels in range")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: DivisorFile = serde_json::from_str(text)
            .map_err(|e| Error::InvalidDivisor(format!("divisor file: {e}")))?;
        file.into_spec()
    }

    pub fn to_file(&self) -> DivisorFile {
        let name = match &self.provenance {
            Provenance::UserSupplied { name } => name.clone(),
            other => other.to_string(),
        };
        DivisorFile {
            name,
            genus: self.ctx.g(),
            a: self.a.clone(),
            b0: self.b0.clone(),
            b: self.b.clone().unwrap_or_default(),
        }
    }
}

/// On-disk form of a user-supplied divisor:
/// `{"name": .., "genus": .., "a": "p/q", "b0": "p/q", "b": ["p/q", ..]}`.
///
/// An empty or missing `b` means the boundary coefficients are unknown.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorFile {
    pub name: String,
    pub genus: u32,
    pub a: Rational,
    pub b0: Rational,
    #[serde(default)]
    pub b: Vec<Rational>,
}

impl DivisorFile {
    pub fn into_spec(self) -> Result<DivisorSpec> {
        let ctx = GenusCtx::new(self.genus)?;
        let b = if self.b.is_empty() {
            None
        } else {
            Some(self.b)
        };
        DivisorSpec::user(ctx, self.name, self.a, self.b0, b)
    }
}

/// Normalized Brill-Noether class `(g+3) lambda - (g+1)/6 d0 - sum i(g-i) di`
/// with its `(r, d)` label: `r+1` is the smallest prime factor of `g+1`.
pub fn bn_class(ctx: GenusCtx) -> Result<(ClassM, DivisorSpec)> {
    ctx.require_classifiable()?;
    let g = ctx.g();
    let p = smallest_prime_factor(g + 1);
    let s = (g + 1) / p;
    if s < 2 {
        return Err(Error::NotComposite(g + 1));
    }
    let (r, d) = (p - 1, g + p - 1 - s);
    if rho(g.into(), r.into(), d.into()) != -1 {
        return Err(Error::IdentityFailure(format!("rho({g}, {r}, {d}) != -1")));
    }
    let gi = i64::from(g);
    let spec = DivisorSpec {
        ctx,
        provenance: Provenance::BrillNoether { r, d },
        a: Rational::from(gi + 3),
        b0: Rational::new(gi + 1, 6),
        b: Some(
            (1..=i64::from(ctx.h()))
                .map(|i| Rational::from(i * (gi - i)))
                .collect(),
        ),
    }
    .validated()?;
    Ok((spec.class().expect("complete"), spec))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SlopeCase {
    Composite,
    GenusTen,
    EvenPrimePlusOne,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlopeRule {
    pub case: SlopeCase,
    pub bound: Rational,
}

fn gp_slope(k: i64) -> Rational {
    Rational::new(6 * k * k + k - 6, k * (k - 1))
}

/// Upper bound on `a/b0` for the divisor `D` at genus `g`.
pub fn slope_rule(ctx: GenusCtx) -> Result<SlopeRule> {
    ctx.require_classifiable()?;
    let g = ctx.g();
    Ok(if !is_prime(g + 1) {
        SlopeRule {
            case: SlopeCase::Composite,
            bound: Rational::from(6) + Rational::new(12, i64::from(g) + 1),
        }
    } else if g == 10 {
        SlopeRule {
            case: SlopeCase::GenusTen,
            bound: Rational::from(7),
        }
    } else {
        // g+1 an odd prime, so g is even
        let k = i64::from(g + 2) / 2;
        SlopeRule {
            case: SlopeCase::EvenPrimePlusOne,
            bound: gp_slope(k),
        }
    })
}

/// Picks the divisor `D`: a validated user divisor if given, else the
/// Brill-Noether, K3 or Gieseker-Petri divisor according to [`slope_rule`].
pub fn choose_d(ctx: GenusCtx, user: Option<DivisorSpec>) -> Result<DivisorSpec> {
    let rule = slope_rule(ctx)?;
    if let Some(spec) = user {
        ctx.ensure_same(&spec.ctx)?;
        let spec = spec.validated()?;
        if spec.slope() > rule.bound {
            return Err(Error::SlopeViolation {
                genus: ctx.g(),
                slope: spec.slope().to_string(),
                bound: rule.bound.to_string(),
            });
        }
        return Ok(spec);
    }
    match rule.case {
        SlopeCase::Composite => bn_class(ctx).map(|(_, spec)| spec),
        SlopeCase::GenusTen => Ok(DivisorSpec {
            ctx,
            provenance: Provenance::K3,
            a: Rational::from(7),
            b0: Rational::one(),
            b: None,
        }),
        SlopeCase::EvenPrimePlusOne => {
            let k = i64::from(ctx.g() + 2) / 2;
            Ok(DivisorSpec {
                ctx,
                provenance: Provenance::GiesekerPetri { k: k as u32 },
                a: Rational::from(6 * k * k + k - 6),
                b0: Rational::from(k * (k - 1)),
                b: None,
            })
        }
    }
}
