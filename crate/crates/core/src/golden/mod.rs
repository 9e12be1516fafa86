//! Exact arithmetic in Q(√5) and Lorentzian linear algebra on R^{4,1}.
//!
//! Every predicate here reduces to the sign of a field element, so no
//! floating point is involved in any decision.

mod lorentz;
mod scalar;

pub use lorentz::{
    classify_pair, future_sign, lorentz_product, reflect, separates, time_coefficient,
    GeometryError, Hyperplane, LorentzMatrix, LorentzVector, PairClass,
};
pub use scalar::GoldenScalar;

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn g(an: i64, ad: i64, bn: i64, bd: i64) -> GoldenScalar {
        GoldenScalar::from_fracs(an, ad, bn, bd)
    }

    fn vertex_axis() -> [GoldenScalar; 4] {
        [GoldenScalar::one(), GoldenScalar::zero(), GoldenScalar::zero(), GoldenScalar::zero()]
    }

    // ½(φ, 1, φ-1, 0): dot with (1,0,0,0) is φ/2
    fn vertex_golden() -> [GoldenScalar; 4] {
        [g(1, 4, 1, 4), g(1, 2, 0, 1), g(-1, 4, 1, 4), GoldenScalar::zero()]
    }

    fn vertex_half() -> [GoldenScalar; 4] {
        std::array::from_fn(|_| g(1, 2, 0, 1))
    }

    fn facet(v: [GoldenScalar; 4]) -> Hyperplane {
        Hyperplane::new(LorentzVector::with_unit_time(&v)).unwrap()
    }

    #[test]
    fn facet_normal_norm() {
        let m = LorentzVector::with_unit_time(&vertex_axis());
        assert_eq!(lorentz_product(&m, &m), g(3, 4, -1, 4));
        let e = LorentzVector::basis(1);
        assert_eq!(lorentz_product(&e, &e), GoldenScalar::one());
    }

    #[test]
    fn adjacent_facets_are_orthogonal() {
        let a = facet(vertex_axis());
        let b = facet(vertex_golden());
        assert!(lorentz_product(a.normal(), b.normal()).is_zero());
        assert_eq!(classify_pair(&a, &b), PairClass::Orthogonal);
    }

    #[test]
    fn half_dot_facets_are_ultraparallel() {
        let a = facet(vertex_axis());
        let b = facet(vertex_half());
        assert_eq!(classify_pair(&a, &b), PairClass::Ultraparallel);
        assert_eq!(classify_pair(&a, &a), PairClass::Equal);
    }

    #[test]
    fn rejects_non_spacelike() {
        assert!(Hyperplane::new(LorentzVector::basis(0)).is_err());
        let light = LorentzVector::new([
            GoldenScalar::one(),
            GoldenScalar::zero(),
            GoldenScalar::zero(),
            GoldenScalar::zero(),
            GoldenScalar::zero(),
        ]);
        assert!(Hyperplane::new(light).is_err());
    }

    #[test]
    fn reflection_negates_normal() {
        let h = facet(vertex_golden());
        assert_eq!(reflect(&h, h.normal()), -h.normal());
        let m = LorentzMatrix::reflection(&h);
        assert!(m.preserves_form());
        assert_eq!(m.determinant(), -GoldenScalar::one());
        assert_eq!(m.compose(&m), LorentzMatrix::identity());
        assert_eq!(m.isometry_inverse(), m);
    }

    #[test]
    fn separation_basics() {
        let h = facet(vertex_axis());
        let far = facet(vertex_half());
        assert!(!separates(&h, &far, &far).unwrap());
        let neighbour = facet(vertex_golden());
        assert!(separates(&h, &far, &neighbour).is_err());
        // reflecting across h puts the copy on the other side
        let mirrored = LorentzMatrix::reflection(&h).apply_hyperplane(&far);
        assert!(separates(&h, &far, &mirrored).unwrap());
    }

    fn scalar() -> impl Strategy<Value = GoldenScalar> {
        (-9i64..9, 1i64..5, -9i64..9, 1i64..5).prop_map(|(a, ad, b, bd)| g(a, ad, b, bd))
    }

    fn vector() -> impl Strategy<Value = LorentzVector> {
        proptest::array::uniform5(scalar()).prop_map(LorentzVector::new)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn reflection_is_isometric_involution(x in vector(), y in vector(), n in vector()) {
            prop_assume!(lorentz_product(&n, &n).is_positive());
            let h = Hyperplane::new(n).unwrap();
            prop_assert_eq!(reflect(&h, &reflect(&h, &x)), x.clone());
            prop_assert_eq!(
                lorentz_product(&reflect(&h, &x), &reflect(&h, &y)),
                lorentz_product(&x, &y)
            );
        }

        #[test]
        fn classification_symmetric_and_scale_free(a in vector(), b in vector(), s in scalar()) {
            prop_assume!(lorentz_product(&a, &a).is_positive());
            prop_assume!(lorentz_product(&b, &b).is_positive());
            prop_assume!(!s.is_zero());
            let ha = Hyperplane::new(a).unwrap();
            let hb = Hyperplane::new(b).unwrap();
            let c = classify_pair(&ha, &hb);
            prop_assert_eq!(c, classify_pair(&hb, &ha));
            prop_assert_eq!(c, classify_pair(&ha.scaled(&s).unwrap(), &hb));
        }
    }
}
