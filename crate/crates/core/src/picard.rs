//! Rational Picard groups of the moduli space of curves (M side) and of
//! even spin curves (S side), as free vector spaces on their standard
//! generators.
//!
//! M side basis, in canonical order: `lambda, d0, d1, ..., dh`.
//! S side basis: `lambda, a0, b0s, a1, b1, ..., ah, bh`, where `h = floor(g/2)`.
//!
//! # Text grammar
//!
//! ```text
//! class := "0" | [sign] term (sign term)*
//! term  := [rational "*"] label
//! sign  := "+" | "-"
//! ```
//!
//! Labels are `lambda` (or `λ`); `d0..dh` (or `δi`, `delta i`) on the M side;
//! `a0..ah` (or `αi`), `b1..bh` (or `βi`) and `b0s` (or `β0`) on the S side.
//! The spin-side boundary class beta_0 is spelled `b0s` so it cannot be
//! confused with the coefficient b_0 of a divisor on the M side.

use std::fmt;
use std::marker::PhantomData;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{RatVector, Rational};

/// Genus of the curves being parametrized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct GenusCtx {
    g: u32,
}

impl GenusCtx {
    pub fn new(g: u32) -> Result<Self> {
        if g < 2 {
            return Err(Error::InvalidGenus {
                genus: g,
                reason: "genus must be at least 2",
            });
        }
        Ok(GenusCtx { g })
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    /// `floor(g/2)`, the number of boundary divisors delta_i with i >= 1.
    pub fn h(&self) -> u32 {
        self.g / 2
    }

    /// Classification and most named classes need `g >= 3`.
    pub fn require_classifiable(&self) -> Result<()> {
        if self.g < 3 {
            return Err(Error::InvalidGenus {
                genus: self.g,
                reason: "this operation requires genus at least 3",
            });
        }
        Ok(())
    }

    pub fn ensure_same(&self, other: &GenusCtx) -> Result<()> {
        if self.g != other.g {
            return Err(Error::GenusMismatch {
                left: self.g,
                right: other.g,
            });
        }
        Ok(())
    }
}

impl TryFrom<u32> for GenusCtx {
    type Error = Error;
    fn try_from(g: u32) -> Result<Self> {
        GenusCtx::new(g)
    }
}

impl From<GenusCtx> for u32 {
    fn from(ctx: GenusCtx) -> u32 {
        ctx.g
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    M,
    S,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::M => "Pic(M_g)",
            Side::S => "Pic(S_g+)",
        }
    }
}

/// A generator of one of the two Picard groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Lambda,
    Delta(u32),
    Alpha(u32),
    Beta(u32),
}

impl Label {
    pub fn side(self) -> Option<Side> {
        match self {
            Label::Lambda => None,
            Label::Delta(_) => Some(Side::M),
            Label::Alpha(_) | Label::Beta(_) => Some(Side::S),
        }
    }

    /// ASCII spelling used in every text output.
    pub fn ascii(self) -> String {
        match self {
            Label::Lambda => "lambda".into(),
            Label::Delta(i) => format!("d{i}"),
            Label::Alpha(i) => format!("a{i}"),
            Label::Beta(0) => "b0s".into(),
            Label::Beta(i) => format!("b{i}"),
        }
    }

    /// Parses a label token in either ASCII or Greek spelling.
    pub fn parse(token: &str) -> Option<Label> {
        let t = token.trim();
        match t {
            "lambda" | "λ" => return Some(Label::Lambda),
            "b0s" | "b_0s" => return Some(Label::Beta(0)),
            _ => {}
        }
        let (kind, rest) = [
            ("delta", 'd'),
            ("alpha", 'a'),
            ("beta", 'b'),
            ("δ", 'd'),
            ("α", 'a'),
            ("β", 'b'),
            ("d", 'd'),
            ("a", 'a'),
            ("b", 'b'),
        ]
        .iter()
        .find_map(|(prefix, kind)| t.strip_prefix(prefix).map(|rest| (*kind, rest)))?;
        let greek = t.starts_with(['δ', 'α', 'β']);
        let digits = rest.strip_prefix('_').unwrap_or(rest);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let i: u32 = digits.parse().ok()?;
        match kind {
            'd' => Some(Label::Delta(i)),
            'a' => Some(Label::Alpha(i)),
            // plain `b0` is the divisor coefficient name, never beta_0
            'b' if i == 0 && !greek => None,
            'b' => Some(Label::Beta(i)),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ascii())
    }
}

/// Marker for one of the two bases.
pub trait Space: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    const SIDE: Side;
    fn dim(ctx: GenusCtx) -> usize;
    fn labels(ctx: GenusCtx) -> Vec<Label>;
    fn index(ctx: GenusCtx, label: Label) -> Option<usize>;
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuliM;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpinS;

impl Space for ModuliM {
    const SIDE: Side = Side::M;

    fn dim(ctx: GenusCtx) -> usize {
        ctx.h() as usize + 2
    }

    fn labels(ctx: GenusCtx) -> Vec<Label> {
        std::iter::once(Label::Lambda)
            .chain((0..=ctx.h()).map(Label::Delta))
            .collect()
    }

    fn index(ctx: GenusCtx, label: Label) -> Option<usize> {
        match label {
            Label::Lambda => Some(0),
            Label::Delta(i) if i <= ctx.h() => Some(1 + i as usize),
            _ => None,
        }
    }
}

impl Space for SpinS {
    const SIDE: Side = Side::S;

    fn dim(ctx: GenusCtx) -> usize {
        2 * ctx.h() as usize + 3
    }

    fn labels(ctx: GenusCtx) -> Vec<Label> {
        std::iter::once(Label::Lambda)
            .chain((0..=ctx.h()).flat_map(|i| [Label::Alpha(i), Label::Beta(i)]))
            .collect()
    }

    fn index(ctx: GenusCtx, label: Label) -> Option<usize> {
        match label {
            Label::Lambda => Some(0),
            Label::Alpha(i) if i <= ctx.h() => Some(1 + 2 * i as usize),
            Label::Beta(i) if i <= ctx.h() => Some(2 + 2 * i as usize),
            _ => None,
        }
    }
}

/// A divisor class with rational coefficients over a fixed basis.
///
/// The slot set is fixed by the genus; no method adds or removes slots.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Class<S: Space> {
    ctx: GenusCtx,
    coeffs: Vec<Rational>,
    _space: PhantomData<S>,
}

pub type ClassM = Class<ModuliM>;
pub type ClassS = Class<SpinS>;

impl<S: Space> Class<S> {
    pub fn zero(ctx: GenusCtx) -> Self {
        Class {
            ctx,
            coeffs: vec![Rational::zero(); S::dim(ctx)],
            _space: PhantomData,
        }
    }

    pub fn basis(ctx: GenusCtx, label: Label) -> Result<Self> {
        Self::zero(ctx).with(label, Rational::one())
    }

    pub fn from_coeffs(ctx: GenusCtx, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != S::dim(ctx) {
            return Err(Error::DimensionMismatch {
                expected: format!("{} coefficients", S::dim(ctx)),
                got: coeffs.len().to_string(),
            });
        }
        Ok(Class {
            ctx,
            coeffs,
            _space: PhantomData,
        })
    }

    /// Builds a class from `(label, coefficient)` pairs; repeated labels add up.
    pub fn from_terms<I>(ctx: GenusCtx, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Label, Rational)>,
    {
        let mut c = Self::zero(ctx);
        for (label, value) in terms {
            let i = c.slot(label)?;
            c.coeffs[i] += &value;
        }
        Ok(c)
    }

    pub fn ctx(&self) -> GenusCtx {
        self.ctx
    }

    pub fn side(&self) -> Side {
        S::SIDE
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn labels(&self) -> Vec<Label> {
        S::labels(self.ctx)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn to_vector(&self) -> RatVector {
        RatVector(self.coeffs.clone())
    }

    pub fn from_vector(ctx: GenusCtx, v: RatVector) -> Result<Self> {
        Self::from_coeffs(ctx, v.0)
    }

    fn slot(&self, label: Label) -> Result<usize> {
        S::index(self.ctx, label).ok_or_else(|| Error::UnknownLabel {
            label: label.ascii(),
            space: S::SIDE.name(),
            genus: self.ctx.g(),
        })
    }

    pub fn coeff(&self, label: Label) -> Result<&Rational> {
        Ok(&self.coeffs[self.slot(label)?])
    }

    /// Returns a copy with the coefficient of `label` replaced.
    pub fn with(mut self, label: Label, value: Rational) -> Result<Self> {
        let i = self.slot(label)?;
        self.coeffs[i] = value;
        Ok(self)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Label, &Rational)> {
        S::labels(self.ctx).into_iter().zip(self.coeffs.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Class {
            ctx: self.ctx,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            _space: PhantomData,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        lincomb(
            &[Rational::one(), Rational::one()],
            &[self.clone(), other.clone()],
        )
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        lincomb(
            &[Rational::one(), -Rational::one()],
            &[self.clone(), other.clone()],
        )
    }

    pub fn render(&self) -> String {
        render_terms(self.terms())
    }

    pub fn parse(text: &str, ctx: GenusCtx) -> Result<Self> {
        let terms = parse_terms(text)?;
        let mut c = Self::zero(ctx);
        for (coeff, token) in terms {
            let label = Label::parse(&token)
                .filter(|l| l.side().is_none_or(|s| s == S::SIDE))
                .ok_or_else(|| Error::UnknownLabel {
                    label: token.clone(),
                    space: S::SIDE.name(),
                    genus: ctx.g(),
                })?;
            let i = c.slot(label)?;
            c.coeffs[i] += &coeff;
        }
        Ok(c)
    }
}

impl<S: Space> fmt::Display for Class<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<S: Space> fmt::Debug for Class<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[g={}]({})", S::SIDE, self.ctx.g(), self.render())
    }
}

/// Coefficient-wise exact linear combination `sum scalars[k] * classes[k]`.
pub fn lincomb<S: Space>(scalars: &[Rational], classes: &[Class<S>]) -> Result<Class<S>> {
    if scalars.len() != classes.len() || classes.is_empty() {
        return Err(Error::DimensionMismatch {
            expected: format!("{} scalars (nonzero)", classes.len()),
            got: scalars.len().to_string(),
        });
    }
    let ctx = classes[0].ctx;
    if let Some(other) = classes.iter().find(|c| c.ctx != ctx) {
        return Err(Error::MixedBasis(format!(
            "genus {} and genus {}",
            ctx.g(),
            other.ctx.g()
        )));
    }
    let mut out = Class::zero(ctx);
    for (s, c) in scalars.iter().zip(classes) {
        if s.is_zero() {
            continue;
        }
        for (o, x) in out.coeffs.iter_mut().zip(&c.coeffs) {
            *o += &(s * x);
        }
    }
    Ok(out)
}

/// A class on either side, as produced by the parser and the CLI.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyClass {
    M(ClassM),
    S(ClassS),
}

impl AnyClass {
    pub fn side(&self) -> Side {
        match self {
            AnyClass::M(_) => Side::M,
            AnyClass::S(_) => Side::S,
        }
    }

    pub fn ctx(&self) -> GenusCtx {
        match self {
            AnyClass::M(c) => c.ctx(),
            AnyClass::S(c) => c.ctx(),
        }
    }

    pub fn render(&self) -> String {
        render_class(self)
    }
}

impl From<ClassM> for AnyClass {
    fn from(c: ClassM) -> Self {
        AnyClass::M(c)
    }
}

impl From<ClassS> for AnyClass {
    fn from(c: ClassS) -> Self {
        AnyClass::S(c)
    }
}

/// Linear combination of classes of the same kind and genus; mixing kinds
/// is a `MixedBasis` error.
pub fn lincomb_any(scalars: &[Rational], classes: &[AnyClass]) -> Result<AnyClass> {
    match classes.first() {
        Some(AnyClass::M(_)) => {
            let ms = classes
                .iter()
                .map(|c| match c {
                    AnyClass::M(m) => Ok(m.clone()),
                    AnyClass::S(_) => Err(Error::MixedBasis("M and S classes".into())),
                })
                .collect::<Result<Vec<_>>>()?;
            lincomb(scalars, &ms).map(AnyClass::M)
        }
        Some(AnyClass::S(_)) => {
            let ss = classes
                .iter()
                .map(|c| match c {
                    AnyClass::S(s) => Ok(s.clone()),
                    AnyClass::M(_) => Err(Error::MixedBasis("M and S classes".into())),
                })
                .collect::<Result<Vec<_>>>()?;
            lincomb(scalars, &ss).map(AnyClass::S)
        }
        None => Err(Error::DimensionMismatch {
            expected: "at least one class".into(),
            got: "0".into(),
        }),
    }
}

pub fn parse_class(text: &str, ctx: GenusCtx, side: Side) -> Result<AnyClass> {
    Ok(match side {
        Side::M => AnyClass::M(ClassM::parse(text, ctx)?),
        Side::S => AnyClass::S(ClassS::parse(text, ctx)?),
    })
}

pub fn render_class(x: &AnyClass) -> String {
    match x {
        AnyClass::M(c) => c.render(),
        AnyClass::S(c) => c.render(),
    }
}

fn render_terms<'a>(terms: impl Iterator<Item = (Label, &'a Rational)>) -> String {
    let mut out = String::new();
    for (label, c) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = c.abs();
        if mag != Rational::one() {
            out.push_str(&mag.to_string());
            out.push('*');
        }
        out.push_str(&label.ascii());
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Splits the text into signed `(coefficient, label token)` pairs.
fn parse_terms(text: &str) -> Result<Vec<(Rational, String)>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Syntax("empty class expression".into()));
    }
    if compact == "0" {
        return Ok(Vec::new());
    }

    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut sign: Option<char> = None;
    let mut current = String::new();
    for ch in compact.chars() {
        if ch == '+' || ch == '-' {
            if !current.is_empty() {
                pieces.push((sign == Some('-'), std::mem::take(&mut current)));
                sign = Some(ch);
            } else if pieces.is_empty() && sign.is_none() {
                sign = Some(ch);
            } else {
                return Err(Error::Syntax(format!("unexpected `{ch}` in `{text}`")));
            }
        } else {
            current.push(ch);
        }
    }
    if current.is_empty() {
        return Err(Error::Syntax(format!("dangling sign in `{text}`")));
    }
    pieces.push((sign == Some('-'), current));

    pieces
        .into_iter()
        .map(|(neg, term)| {
            let (coeff, label) = match term.split_once('*') {
                Some((c, l)) => {
                    let c: Rational = c
                        .parse()
                        .map_err(|_| Error::Syntax(format!("bad coefficient `{c}`")))?;
                    (c, l.to_string())
                }
                None => {
                    if term.parse::<Rational>().is_ok() {
                        return Err(Error::Syntax(format!(
                            "constant term `{term}` has no label"
                        )));
                    }
                    (Rational::one(), term.clone())
                }
            };
            if label.is_empty() || label.contains('*') {
                return Err(Error::Syntax(format!("bad term `{term}`")));
            }
            Ok((if neg { -coeff } else { coeff }, label))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn ctx(g: u32) -> GenusCtx {
        GenusCtx::new(g).unwrap()
    }

    #[test]
    fn genus_bounds() {
        assert!(GenusCtx::new(1).is_err());
        assert_eq!(ctx(7).h(), 3);
        assert!(ctx(2).require_classifiable().is_err());
    }

    #[test]
    fn dimensions() {
        for g in 2..30 {
            let c = ctx(g);
            assert_eq!(ClassM::zero(c).dim(), (g / 2 + 2) as usize);
            assert_eq!(ClassS::zero(c).dim(), (2 * (g / 2) + 3) as usize);
        }
    }

    #[test]
    fn lincomb_identity_case() {
        let c = ctx(5);
        let lam = ClassM::basis(c, Label::Lambda).unwrap();
        let d0 = ClassM::basis(c, Label::Delta(0)).unwrap();
        let x = lincomb(&[q(1, 1), q(0, 1)], &[lam.clone(), d0]).unwrap();
        assert_eq!(x, lam);
    }

    #[test]
    fn lincomb_rejects_mixed_genus() {
        let a = ClassM::basis(ctx(5), Label::Lambda).unwrap();
        let b = ClassM::basis(ctx(6), Label::Lambda).unwrap();
        assert!(matches!(
            lincomb(&[q(1, 1), q(1, 1)], &[a.clone(), b]),
            Err(Error::MixedBasis(_))
        ));
        let s = AnyClass::S(ClassS::basis(ctx(5), Label::Lambda).unwrap());
        assert!(matches!(
            lincomb_any(&[q(1, 1), q(1, 1)], &[AnyClass::M(a), s]),
            Err(Error::MixedBasis(_))
        ));
        assert!(lincomb::<ModuliM>(&[], &[]).is_err());
    }

    #[test]
    fn render_examples() {
        let c = ctx(3);
        let theta = ClassS::from_terms(
            c,
            [
                (Label::Lambda, q(1, 4)),
                (Label::Alpha(0), q(-1, 16)),
                (Label::Beta(1), q(-1, 2)),
            ],
        )
        .unwrap();
        assert_eq!(theta.render(), "1/4*lambda - 1/16*a0 - 1/2*b1");
        assert_eq!(ClassS::zero(c).render(), "0");
        let neg = ClassM::from_terms(c, [(Label::Delta(1), q(-1, 1))]).unwrap();
        assert_eq!(neg.render(), "-d1");
    }

    #[test]
    fn parse_examples() {
        let c = ctx(3);
        let theta = ClassS::parse("1/4*lambda - 1/16*a0 - 1/2*b1", c).unwrap();
        assert_eq!(theta.coeff(Label::Alpha(0)).unwrap(), &q(-1, 16));
        assert!(ClassS::parse("0", c).unwrap().is_zero());
        let k = ClassM::parse("13*lambda - 2*d0 - 3*d1 - 2*d2", ctx(5)).unwrap();
        assert_eq!(k.coeff(Label::Delta(2)).unwrap(), &q(-2, 1));
        let greek = ClassS::parse("λ - 2*β0 + α_1", ctx(4)).unwrap();
        assert_eq!(greek.render(), "lambda - 2*b0s + a1");
        let lead = ClassM::parse("-d0 + lambda", c).unwrap();
        assert_eq!(lead.render(), "lambda - d0");
        let repeated = ClassM::parse("lambda + lambda", c).unwrap();
        assert_eq!(repeated.render(), "2*lambda");
    }

    #[test]
    fn parse_errors() {
        let c = ctx(3);
        assert!(matches!(
            ClassM::parse("d2", c),
            Err(Error::UnknownLabel { .. })
        ));
        assert!(matches!(
            ClassS::parse("b0", c),
            Err(Error::UnknownLabel { .. })
        ));
        assert!(matches!(
            ClassS::parse("d0", c),
            Err(Error::UnknownLabel { .. })
        ));
        for bad in [
            "",
            "lambda +",
            "--lambda",
            "2*",
            "3",
            "lambda ++ d0",
            "1/0*lambda",
            "lambda - + d0",
        ] {
            assert!(ClassM::parse(bad, c).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn slot_set_is_fixed() {
        let c = ClassS::zero(ctx(4));
        assert!(c.clone().with(Label::Alpha(3), q(1, 1)).is_err());
        assert_eq!(c.with(Label::Alpha(2), q(1, 1)).unwrap().dim(), 7);
    }
}
