//! Transfer maps of the forgetful covering from even spin curves to curves.
//!
//! Pullback: `lambda -> lambda`, `d0 -> a0 + 2*b0s`, `di -> ai + bi`.
//! Pushforward multiplies each spin-side generator by the degree of its
//! boundary component over the corresponding boundary divisor of M_g.

use crate::error::Result;
use crate::exact::{RatMatrix, Rational};
use crate::picard::{ClassM, ClassS, GenusCtx, Label, ModuliM, Space, SpinS};
use num_bigint::BigInt;
use num_traits::One;

fn pow2(k: u32) -> BigInt {
    BigInt::one() << k
}

/// Degrees of the spin covering and of its boundary components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinCounts {
    pub genus: u32,
    /// `2^{2g}`, all theta-characteristics.
    pub deg_pi_total: BigInt,
    /// `2^{g-1}(2^g+1)`, even theta-characteristics.
    pub n_even: BigInt,
    /// `2^{g-1}(2^g-1)`, odd theta-characteristics.
    pub n_odd: BigInt,
    /// `2^{2g-2}`
    pub deg_a0: BigInt,
    /// `2^{g-2}(2^{g-1}+1)`
    pub deg_b0: BigInt,
    /// `2^{g-2}(2^i+1)(2^{g-i}+1)` for `1 <= i <= h`
    pub deg_ai: Vec<BigInt>,
    /// `2^{g-2}(2^i-1)(2^{g-i}-1)` for `1 <= i <= h`
    pub deg_bi: Vec<BigInt>,
}

/// One named consistency identity with its outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub holds: bool,
}

impl IdentityCheck {
    fn new(name: impl Into<String>, lhs: BigInt, rhs: BigInt) -> Self {
        let holds = lhs == rhs;
        IdentityCheck {
            name: name.into(),
            lhs,
            rhs,
            holds,
        }
    }
}

pub fn spin_counts(ctx: GenusCtx) -> SpinCounts {
    let g = ctx.g();
    let one = BigInt::one();
    let deg_ai = (1..=ctx.h())
        .map(|i| pow2(g - 2) * (pow2(i) + &one) * (pow2(g - i) + &one))
        .collect();
    let deg_bi = (1..=ctx.h())
        .map(|i| pow2(g - 2) * (pow2(i) - &one) * (pow2(g - i) - &one))
        .collect();
    SpinCounts {
        genus: g,
        deg_pi_total: pow2(2 * g),
        n_even: pow2(g - 1) * (pow2(g) + &one),
        n_odd: pow2(g - 1) * (pow2(g) - &one),
        deg_a0: pow2(2 * g - 2),
        deg_b0: pow2(g - 2) * (pow2(g - 1) + &one),
        deg_ai,
        deg_bi,
    }
}

impl SpinCounts {
    /// `n_even + n_odd = 2^{2g}`, `deg A0 + 2 deg B0 = n_even`, and
    /// `deg Ai + deg Bi = n_even` for every `i`.
    pub fn identities(&self) -> Vec<IdentityCheck> {
        let mut out = vec![
            IdentityCheck::new(
                "n_even + n_odd = 2^(2g)",
                &self.n_even + &self.n_odd,
                self.deg_pi_total.clone(),
            ),
            IdentityCheck::new(
                "deg_A0 + 2*deg_B0 = n_even",
                &self.deg_a0 + 2 * &self.deg_b0,
                self.n_even.clone(),
            ),
        ];
        for (i, (a, b)) in self.deg_ai.iter().zip(&self.deg_bi).enumerate() {
            out.push(IdentityCheck::new(
                format!("deg_A{0} + deg_B{0} = n_even", i + 1),
                a + b,
                self.n_even.clone(),
            ));
        }
        out
    }

    pub fn all_hold(&self) -> bool {
        self.identities().iter().all(|c| c.holds)
    }
}

/// Matrix of the pullback, shape `(2h+3) x (h+2)`: column `j` holds the
/// image of the `j`-th M-side generator.
pub fn pullback_matrix(ctx: GenusCtx) -> RatMatrix {
    let mut m = RatMatrix::zeros(SpinS::dim(ctx), ModuliM::dim(ctx));
    let s = |l| SpinS::index(ctx, l).expect("label in range");
    let col = |l| ModuliM::index(ctx, l).expect("label in range");
    m[(s(Label::Lambda), col(Label::Lambda))] = Rational::one();
    m[(s(Label::Alpha(0)), col(Label::Delta(0)))] = Rational::one();
    m[(s(Label::Beta(0)), col(Label::Delta(0)))] = Rational::from(2);
    for i in 1..=ctx.h() {
        m[(s(Label::Alpha(i)), col(Label::Delta(i)))] = Rational::one();
        m[(s(Label::Beta(i)), col(Label::Delta(i)))] = Rational::one();
    }
    m
}

/// Matrix of the pushforward, shape `(h+2) x (2h+3)`.
pub fn pushforward_matrix(ctx: GenusCtx) -> RatMatrix {
    let counts = spin_counts(ctx);
    let mut m = RatMatrix::zeros(ModuliM::dim(ctx), SpinS::dim(ctx));
    let s = |l| SpinS::index(ctx, l).expect("label in range");
    let row = |l| ModuliM::index(ctx, l).expect("label in range");
    m[(row(Label::Lambda), s(Label::Lambda))] = counts.n_even.clone().into();
    m[(row(Label::Delta(0)), s(Label::Alpha(0)))] = counts.deg_a0.clone().into();
    m[(row(Label::Delta(0)), s(Label::Beta(0)))] = counts.deg_b0.clone().into();
    for i in 1..=ctx.h() {
        let k = (i - 1) as usize;
        m[(row(Label::Delta(i)), s(Label::Alpha(i)))] = counts.deg_ai[k].clone().into();
        m[(row(Label::Delta(i)), s(Label::Beta(i)))] = counts.deg_bi[k].clone().into();
    }
    m
}

/// Pullback along the matrix `pb` (as returned by [`pullback_matrix`]).
pub fn pullback_with(pb: &RatMatrix, x: &ClassM) -> Result<ClassS> {
    ClassS::from_vector(x.ctx(), pb.mul_vec(&x.to_vector())?)
}

/// Pushforward along the matrix `pf` (as returned by [`pushforward_matrix`]).
pub fn pushforward_with(pf: &RatMatrix, x: &ClassS) -> Result<ClassM> {
    ClassM::from_vector(x.ctx(), pf.mul_vec(&x.to_vector())?)
}

pub fn pullback(x: &ClassM) -> ClassS {
    pullback_with(&pullback_matrix(x.ctx()), x).expect("shapes agree by construction")
}

pub fn pushforward(x: &ClassS) -> ClassM {
    pushforward_with(&pushforward_matrix(x.ctx()), x).expect("shapes agree by construction")
}

/// Degree of the covering restricted to the even component, as a rational.
pub fn even_degree(ctx: GenusCtx) -> Rational {
    spin_counts(ctx).n_even.into()
}
