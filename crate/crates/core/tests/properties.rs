use proptest::prelude::*;
use spinpic::picard::{lincomb, parse_class, render_class, ModuliM, Space, SpinS};
use spinpic::testcurves::{curve, CurveName};
use spinpic::transfer::{even_degree, pullback};
use spinpic::{AnyClass, ClassM, ClassS, GenusCtx, Rational, Side};

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=12).prop_map(|(p, q)| Rational::new(p, q))
}

fn class_m() -> impl Strategy<Value = ClassM> {
    (3u32..=25).prop_flat_map(|g| {
        let ctx = GenusCtx::new(g).unwrap();
        proptest::collection::vec(rational(), ModuliM::dim(ctx))
            .prop_map(move |v| ClassM::from_coeffs(ctx, v).unwrap())
    })
}

fn class_s() -> impl Strategy<Value = ClassS> {
    (3u32..=25).prop_flat_map(|g| {
        let ctx = GenusCtx::new(g).unwrap();
        proptest::collection::vec(rational(), SpinS::dim(ctx))
            .prop_map(move |v| ClassS::from_coeffs(ctx, v).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn lift_identity(x in class_m()) {
        let ctx = x.ctx();
        let r = curve(ctx, CurveName::R).unwrap();
        let b = curve(ctx, CurveName::B).unwrap();
        prop_assert_eq!(r.pair_s(&pullback(&x)).unwrap(), even_degree(ctx) * b.pair_m(&x).unwrap());
    }

    #[test]
    fn render_parse_round_trip_m(x in class_m()) {
        let back = parse_class(&render_class(&AnyClass::M(x.clone())), x.ctx(), Side::M).unwrap();
        prop_assert_eq!(back, AnyClass::M(x));
    }

    #[test]
    fn render_parse_round_trip_s(x in class_s()) {
        let back = parse_class(&x.render(), x.ctx(), Side::S).unwrap();
        prop_assert_eq!(back, AnyClass::S(x));
    }

    #[test]
    fn pairing_is_linear(x in class_s(), s in rational(), t in rational(), i in 1u32..=12) {
        let ctx = x.ctx();
        let y = ClassS::basis(ctx, spinpic::Label::Beta(0)).unwrap();
        let combo = lincomb(&[s.clone(), t.clone()], &[x.clone(), y.clone()]).unwrap();
        let name = if i <= ctx.h() { CurveName::G(i) } else { CurveName::H0 };
        let c = curve(ctx, name).unwrap();
        prop_assert_eq!(
            c.pair_s(&combo).unwrap(),
            s * c.pair_s(&x).unwrap() + t * c.pair_s(&y).unwrap()
        );
    }
}

#[test]
fn lift_identity_on_basis_over_range() {
    for g in 3..=25 {
        let ctx = GenusCtx::new(g).unwrap();
        let r = curve(ctx, CurveName::R).unwrap();
        let b = curve(ctx, CurveName::B).unwrap();
        for label in ModuliM::labels(ctx) {
            let x = ClassM::basis(ctx, label).unwrap();
            assert_eq!(
                r.pair_s(&pullback(&x)).unwrap(),
                even_degree(ctx) * b.pair_m(&x).unwrap()
            );
        }
    }
}
