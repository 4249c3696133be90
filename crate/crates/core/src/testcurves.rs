//! Test curves, stored as their intersection numbers against a basis.
//!
//! * `B`: K3 Lefschetz pencil on M_g; `R`: its fibre-product lift to S_g+.
//! * `F(i)`, `G(i)`: lifts of the pencil `C^i` in `Delta_i` to `A_i`, `B_i`.
//! * `F0`, `G0`: lifts of the elliptic-tail pencil; `H0`: a pencil in `B_0`.
//!
//! The theta-null class is re-derived from these numbers by an exact linear
//! solve in [`solve_thetanull`].

use std::fmt;
use std::str::FromStr;

use crate::catalog::thetanull_class;
use crate::error::{Error, Result};
use crate::exact::{solve_exact, RatMatrix, RatVector, Rational};
use crate::picard::{AnyClass, ClassM, ClassS, GenusCtx, Label, ModuliM, Side, Space, SpinS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveName {
    B,
    R,
    F0,
    G0,
    H0,
    F(u32),
    G(u32),
}

impl CurveName {
    pub fn side(self) -> Side {
        match self {
            CurveName::B => Side::M,
            _ => Side::S,
        }
    }
}

impl fmt::Display for CurveName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveName::B => f.write_str("B"),
            CurveName::R => f.write_str("R"),
            CurveName::F0 => f.write_str("F0"),
            CurveName::G0 => f.write_str("G0"),
            CurveName::H0 => f.write_str("H0"),
            CurveName::F(i) => write!(f, "F{i}"),
            CurveName::G(i) => write!(f, "G{i}"),
        }
    }
}

impl FromStr for CurveName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownCurve(s.to_string());
        Ok(match s {
            "B" => CurveName::B,
            "R" => CurveName::R,
            "F0" => CurveName::F0,
            "G0" => CurveName::G0,
            "H0" => CurveName::H0,
            _ => {
                let (kind, idx) = s.split_at_checked(1).ok_or_else(unknown)?;
                if idx.is_empty() || !idx.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(unknown());
                }
                let i: u32 = idx.parse().map_err(|_| unknown())?;
                match kind {
                    "F" => CurveName::F(i),
                    "G" => CurveName::G(i),
                    _ => return Err(unknown()),
                }
            }
        })
    }
}

/// A test curve as the full vector of its intersection numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFunctional {
    pub name: CurveName,
    pub ctx: GenusCtx,
    pub side: Side,
    pub numbers: RatVector,
}

impl CurveFunctional {
    fn build(ctx: GenusCtx, name: CurveName, entries: &[(Label, Rational)]) -> Self {
        let side = name.side();
        let dim = match side {
            Side::M => ModuliM::dim(ctx),
            Side::S => SpinS::dim(ctx),
        };
        let mut numbers = RatVector::zeros(dim);
        for (label, v) in entries {
            let i = match side {
                Side::M => ModuliM::index(ctx, *label),
                Side::S => SpinS::index(ctx, *label),
            }
            .expect("curve label in range");
            numbers[i] = v.clone();
        }
        CurveFunctional {
            name,
            ctx,
            side,
            numbers,
        }
    }

    pub fn labels(&self) -> Vec<Label> {
        match self.side {
            Side::M => ModuliM::labels(self.ctx),
            Side::S => SpinS::labels(self.ctx),
        }
    }

    pub fn number(&self, label: Label) -> Option<&Rational> {
        let i = match self.side {
            Side::M => ModuliM::index(self.ctx, label),
            Side::S => SpinS::index(self.ctx, label),
        }?;
        Some(&self.numbers[i])
    }

    pub fn pair_m(&self, x: &ClassM) -> Result<Rational> {
        self.check(Side::M, x.ctx())?;
        self.numbers.dot(&x.to_vector())
    }

    pub fn pair_s(&self, x: &ClassS) -> Result<Rational> {
        self.check(Side::S, x.ctx())?;
        self.numbers.dot(&x.to_vector())
    }

    fn check(&self, side: Side, ctx: GenusCtx) -> Result<()> {
        if self.side != side {
            return Err(Error::SideMismatch {
                curve: self.name.to_string(),
                expected: self.side.name(),
            });
        }
        self.ctx.ensure_same(&ctx)
    }
}

/// Exact pairing of a test curve with a class on the same side and genus.
pub fn intersect(c: &CurveFunctional, x: &AnyClass) -> Result<Rational> {
    match x {
        AnyClass::M(m) => c.pair_m(m),
        AnyClass::S(s) => c.pair_s(s),
    }
}

pub fn curve(ctx: GenusCtx, name: CurveName) -> Result<CurveFunctional> {
    ctx.require_classifiable()?;
    let g = i64::from(ctx.g());
    let gu = ctx.g();
    let r = Rational::from;
    Ok(match name {
        CurveName::B => CurveFunctional::build(
            ctx,
            name,
            &[(Label::Lambda, r(g + 1)), (Label::Delta(0), r(6 * g + 18))],
        ),
        CurveName::R => {
            let n_even = Rational::pow2(gu - 1) * (Rational::pow2(gu) + Rational::one());
            CurveFunctional::build(
                ctx,
                name,
                &[
                    (Label::Lambda, r(g + 1) * n_even),
                    (Label::Alpha(0), r(6 * g + 18) * Rational::pow2(2 * gu - 2)),
                    (
                        Label::Beta(0),
                        r(6 * g + 18)
                            * Rational::pow2(gu - 2)
                            * (Rational::pow2(gu - 1) + Rational::one()),
                    ),
                ],
            )
        }
        CurveName::F0 => CurveFunctional::build(
            ctx,
            name,
            &[
                (Label::Lambda, r(1)),
                (Label::Alpha(0), r(12)),
                (Label::Beta(1), r(-1)),
            ],
        ),
        CurveName::G0 => CurveFunctional::build(
            ctx,
            name,
            &[
                (Label::Lambda, r(3)),
                (Label::Alpha(0), r(12)),
                (Label::Beta(0), r(12)),
                (Label::Alpha(1), r(-3)),
            ],
        ),
        CurveName::H0 => CurveFunctional::build(
            ctx,
            name,
            &[(Label::Beta(0), r(1 - g)), (Label::Alpha(1), r(1))],
        ),
        CurveName::F(i) | CurveName::G(i) => {
            if i == 0 || i > ctx.h() {
                return Err(Error::UnknownCurve(format!(
                    "{name} (index must be in 1..={} at genus {gu})",
                    ctx.h()
                )));
            }
            let label = match name {
                CurveName::F(_) => Label::Alpha(i),
                _ => Label::Beta(i),
            };
            CurveFunctional::build(ctx, name, &[(label, r(2 - 2 * i64::from(i)))])
        }
    })
}

/// `B, R, F0, G0, H0` followed by `F(i), G(i)` for `1 <= i <= h`.
pub fn standard_curves(ctx: GenusCtx) -> Result<Vec<CurveFunctional>> {
    let mut names = vec![
        CurveName::B,
        CurveName::R,
        CurveName::F0,
        CurveName::G0,
        CurveName::H0,
    ];
    for i in 1..=ctx.h() {
        names.push(CurveName::F(i));
        names.push(CurveName::G(i));
    }
    names.into_iter().map(|n| curve(ctx, n)).collect()
}

/// Serializable curve table: curve name -> basis label -> `"p/q"`.
pub fn curve_table(curves: &[CurveFunctional]) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    for c in curves {
        let row: serde_json::Map<String, serde_json::Value> = c
            .labels()
            .into_iter()
            .zip(c.numbers.iter())
            .map(|(l, v)| (l.ascii(), serde_json::Value::String(v.to_string())))
            .collect();
        map.insert(c.name.to_string(), serde_json::Value::Object(row));
    }
    serde_json::Value::Object(map)
}

/// Sign with which an unknown enters the stored theta-null class:
/// `lambda_bar lambda - alpha_bar_0 a0 - beta_bar_0 b0s - sum(...)`.
fn expansion_sign(label: Label) -> Rational {
    match label {
        Label::Lambda => Rational::one(),
        _ => -Rational::one(),
    }
}

/// The linear system for the unknown expansion coefficients
/// `(lambda_bar, alpha_bar_0, beta_bar_0, alpha_bar_1, beta_bar_1, ...)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetanullSystem {
    pub ctx: GenusCtx,
    pub unknowns: Vec<Label>,
    pub row_names: Vec<String>,
    pub matrix: RatMatrix,
    pub rhs: RatVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetanullSolution {
    pub system: ThetanullSystem,
    /// Solved unknowns, all of them entered with the expansion sign convention.
    pub unknowns: RatVector,
    pub class: ClassS,
    /// `matrix * unknowns - rhs`, zero for an exact solution.
    pub residual: RatVector,
}

/// Builds the system from the pencil relations `F0, G0, H0 . theta = 0`
/// (numbers taken from `curves`) and the boundary values
/// `alpha_bar_i = 0`, `beta_bar_i = 1/2` for `i >= 1`.
pub fn thetanull_system(ctx: GenusCtx, curves: &[CurveFunctional]) -> Result<ThetanullSystem> {
    ctx.require_classifiable()?;
    let unknowns = SpinS::labels(ctx);
    let n = unknowns.len();
    let mut rows = Vec::with_capacity(n);
    let mut rhs = Vec::with_capacity(n);
    let mut row_names = Vec::with_capacity(n);

    for pencil in [CurveName::F0, CurveName::G0, CurveName::H0] {
        let c = curves
            .iter()
            .find(|c| c.name == pencil)
            .ok_or_else(|| Error::UnknownCurve(format!("{pencil} missing from curve table")))?;
        ctx.ensure_same(&c.ctx)?;
        rows.push(
            unknowns
                .iter()
                .zip(c.numbers.iter())
                .map(|(l, v)| v * expansion_sign(*l))
                .collect::<Vec<_>>(),
        );
        rhs.push(Rational::zero());
        row_names.push(format!("{pencil}.theta = 0"));
    }
    for i in 1..=ctx.h() {
        for (label, value, name) in [
            (
                Label::Alpha(i),
                Rational::zero(),
                format!("alpha_bar_{i} = 0"),
            ),
            (
                Label::Beta(i),
                Rational::new(1, 2),
                format!("beta_bar_{i} = 1/2"),
            ),
        ] {
            let mut row = vec![Rational::zero(); n];
            row[SpinS::index(ctx, label).expect("in range")] = Rational::one();
            rows.push(row);
            rhs.push(value);
            row_names.push(name);
        }
    }

    Ok(ThetanullSystem {
        ctx,
        unknowns,
        row_names,
        matrix: RatMatrix::from_rows(rows)?,
        rhs: RatVector(rhs),
    })
}

pub fn solve_thetanull_with(
    ctx: GenusCtx,
    curves: &[CurveFunctional],
) -> Result<ThetanullSolution> {
    let system = thetanull_system(ctx, curves)?;
    let unknowns = solve_exact(&system.matrix, &system.rhs)?;
    let residual = system.matrix.mul_vec(&unknowns)?.sub(&system.rhs)?;
    let coeffs = system
        .unknowns
        .iter()
        .zip(unknowns.iter())
        .map(|(l, u)| u * expansion_sign(*l))
        .collect();
    let class = ClassS::from_coeffs(ctx, coeffs)?;
    Ok(ThetanullSolution {
        system,
        unknowns,
        class,
        residual,
    })
}

/// Solves for the theta-null class from the standard curves and checks it
/// against the closed form.
pub fn solve_thetanull(ctx: GenusCtx) -> Result<ThetanullSolution> {
    let sol = solve_thetanull_with(ctx, &standard_curves(ctx)?)?;
    let closed = thetanull_class(ctx)?;
    if sol.class != closed {
        return Err(Error::IdentityFailure(format!(
            "solved theta-null {} differs from {}",
            sol.class, closed
        )));
    }
    Ok(sol)
}
