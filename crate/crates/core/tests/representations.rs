use gstable_core::algebra::{is_indecomposable, AutChain, EndAlgebra};
use gstable_core::budget::Budgets;
use gstable_core::field::Field;
use gstable_core::group::named;
use gstable_core::matrix::FqMatrix;
use gstable_core::rep::{find_isomorphism, stability_witness, Representation};

fn jordan(f: &Field, n: usize) -> FqMatrix {
    let mut m = FqMatrix::identity(f, n);
    for i in 0..n - 1 {
        m.set(i, i + 1, f.one());
    }
    m
}

#[test]
fn unit_counts_of_jordan_blocks() {
    let b = Budgets::default();
    for (p, n, order) in [(2, 2, 2), (2, 3, 4), (2, 4, 4), (3, 2, 3), (3, 3, 3), (5, 2, 5)] {
        let f = Field::prime(p).unwrap();
        let g = named::cyclic(order);
        let theta = Representation::from_generators(&g, &g.whole(), &f, n, &[(1, jordan(&f, n))]).unwrap();
        assert!(is_indecomposable(&g, &theta, &b).unwrap());
        let e = EndAlgebra::of(&g, &theta);
        assert_eq!(e.dim(), n);
        let units = e.enumerate(1 << 20).unwrap().into_iter().filter(|m| m.is_invertible()).count() as u128;
        let chain = AutChain::of(&g, &theta, &b).unwrap();
        assert_eq!(chain.order(0), units);
        assert_eq!(units, (p as u128 - 1) * (p as u128).pow(n as u32 - 1));
        assert_eq!(chain.depth(), n);
        for j in 1..n {
            assert_eq!(chain.factors(j), vec![p as i64]);
        }
    }
}

#[test]
fn witnesses_intertwine_with_twists() {
    let g = named::dihedral(4);
    let r = g.generate(&[1]).unwrap();
    let f = Field::prime(5).unwrap();
    // r ↦ [[0,−1],[1,0]] is stable under the reflection
    let rot = FqMatrix::from_ints(&f, &[&[0, -1], &[1, 0]]);
    let theta = Representation::from_generators(&g, &r, &f, 2, &[(1, rot)]).unwrap();
    let w = stability_witness(&g, &theta).unwrap();
    for x in g.elements() {
        let twisted = theta.twist(&g, x).unwrap();
        assert!(find_isomorphism(&g, &theta, &twisted).unwrap().is_some());
        for &l in r.elements() {
            let lhs = w[x].mul(theta.image(l));
            assert_eq!(lhs, twisted.image(l).mul(&w[x]), "x = {x}, l = {l}");
        }
    }
}
