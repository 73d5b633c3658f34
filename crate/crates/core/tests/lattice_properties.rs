use ckks::lattice::{
    babai_rounding, basis_from_generators, brute_force_cvp, brute_force_svp, dot, gram_schmidt,
    in_parallelepiped, is_basis_of, is_unimodular, lambda1_lower_bound_sq, norm_sq, rank_of,
    same_lattice, Basis, Q,
};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn qi(x: i64) -> Q {
    Q::from_integer(x.into())
}

fn to_q(rows: &[Vec<i64>]) -> Vec<Vec<Q>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| qi(x)).collect())
        .collect()
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum())
                .collect()
        })
        .collect()
}

/// Full-rank square integer bases with entries in [-5, 5].
fn basis(max_dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (2..=max_dim)
        .prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-5i64..=5, n), n))
        .prop_filter("full rank", |rows| rank_of(&to_q(rows)) == rows.len())
}

/// Products of a few elementary integer row operations.
fn unimodular(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec((0..n, 0..n, -2i64..=2, any::<bool>()), 1..5).prop_map(move |ops| {
        let mut u: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        for (i, j, c, swap) in ops {
            if i == j {
                u[i].iter_mut().for_each(|x| *x = -*x);
            } else if swap {
                u.swap(i, j);
            } else {
                let rj = u[j].clone();
                u[i].iter_mut().zip(rj).for_each(|(x, y)| *x += c * y);
            }
        }
        u
    })
}

fn basis_with_transforms() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    basis(3).prop_flat_map(|b| {
        let n = b.len();
        (Just(b), unimodular(n), unimodular(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gram_schmidt_is_orthogonal_and_spans(rows in basis(4)) {
        let b = Basis::from_integers(&rows).unwrap();
        let gs = gram_schmidt(&b);
        for i in 0..gs.len() {
            for j in 0..i {
                prop_assert!(dot(&gs[i], &gs[j]).is_zero());
            }
        }
        let star = Basis::new(gs).unwrap();
        for v in b.vectors() {
            prop_assert!(star.coordinates(v).is_ok());
        }
    }

    #[test]
    fn shortest_vector_respects_gram_schmidt_bound(rows in basis(4)) {
        let b = Basis::from_integers(&rows).unwrap();
        let v = brute_force_svp(&b, 1.0).unwrap();
        prop_assert!(norm_sq(&v) >= lambda1_lower_bound_sq(&b));
        prop_assert!(!norm_sq(&v).is_zero());
        let y = b.coordinates(&v).unwrap();
        prop_assert!(y.iter().all(|t| t.is_integer()));
        // no basis vector is shorter than the answer
        prop_assert!(b.vectors().iter().all(|bi| norm_sq(bi) >= norm_sq(&v)));
        // a wider search radius finds the same length
        prop_assert_eq!(norm_sq(&brute_force_svp(&b, 1.5).unwrap()), norm_sq(&v));
    }

    #[test]
    fn same_lattice_is_an_equivalence((rows, u, w) in basis_with_transforms()) {
        let b1 = Basis::from_integers(&rows).unwrap();
        let b2 = Basis::from_integers(&matmul(&u, &rows)).unwrap();
        let b3 = Basis::from_integers(&matmul(&w, &matmul(&u, &rows))).unwrap();
        prop_assert!(is_unimodular(&to_q(&u)).unwrap());
        prop_assert!(same_lattice(&b1, &b1).unwrap());
        prop_assert!(same_lattice(&b1, &b2).unwrap());
        prop_assert!(same_lattice(&b2, &b1).unwrap());
        prop_assert!(same_lattice(&b2, &b3).unwrap());
        prop_assert!(same_lattice(&b1, &b3).unwrap());
    }

    #[test]
    fn basis_criterion_agrees_with_change_of_basis((rows, u, _w) in basis_with_transforms()) {
        let b = Basis::from_integers(&rows).unwrap();
        let v = Basis::from_integers(&matmul(&u, &rows)).unwrap();
        prop_assert_eq!(is_basis_of(&v, &b).unwrap(), same_lattice(&v, &b).unwrap());
        prop_assert!(is_basis_of(&v, &b).unwrap());
        // doubling one vector gives an index-2 sublattice
        let mut doubled = matmul(&u, &rows);
        doubled[0].iter_mut().for_each(|x| *x *= 2);
        let d = Basis::from_integers(&doubled).unwrap();
        prop_assert!(!is_basis_of(&d, &b).unwrap());
        prop_assert!(!same_lattice(&d, &b).unwrap());
    }

    #[test]
    fn generators_reduce_to_a_basis(rows in basis(3), extra in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 0..3)) {
        let n = rows.len();
        let reference = Basis::from_integers(&rows).unwrap();
        let mut gens: Vec<Vec<i64>> = rows.clone();
        for coeffs in &extra {
            gens.push((0..n).map(|j| (0..n).map(|i| coeffs[i] * rows[i][j]).sum()).collect());
        }
        let big: Vec<Vec<BigInt>> = gens.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect();
        let b = basis_from_generators(&big).unwrap();
        prop_assert!(same_lattice(&b, &reference).unwrap());
        prop_assert!(is_basis_of(&b, &reference).unwrap());
        for g in to_q(&gens) {
            prop_assert!(b.coordinates(&g).unwrap().iter().all(|t| t.is_integer()));
        }
        // the first vector is a shortest one
        let svp = brute_force_svp(&reference, 1.0).unwrap();
        prop_assert_eq!(norm_sq(&b.vectors()[0]), norm_sq(&svp));
    }

    #[test]
    fn closest_vector_beats_rounding(rows in basis(3), t in prop::collection::vec((-20i64..20, 1i64..7), 3)) {
        let b = Basis::from_integers(&rows).unwrap();
        let target: Vec<Q> = t.iter().take(b.dim()).map(|&(n, d)| Q::new(n.into(), d.into())).collect();
        let v = brute_force_cvp(&b, &target).unwrap();
        let dist = |w: &[Q]| norm_sq(&w.iter().zip(&target).map(|(a, c)| a - c).collect::<Vec<_>>());
        let rounded = b.combine(&babai_rounding(&b, &target).unwrap());
        prop_assert!(dist(&v) <= dist(&rounded));
        prop_assert!(b.coordinates(&v).unwrap().iter().all(|c| c.is_integer()));
        // no neighbour of the answer is closer
        for i in 0..b.rank() {
            for s in [-1i64, 1] {
                let w: Vec<Q> = v.iter().zip(&b.vectors()[i]).map(|(a, bi)| a + qi(s) * bi).collect();
                prop_assert!(dist(&w) >= dist(&v));
            }
        }
    }

    #[test]
    fn reduced_coordinates_lie_in_parallelepiped(rows in basis(3), num in prop::collection::vec(-30i64..30, 3)) {
        let b = Basis::from_integers(&rows).unwrap();
        let v = b.combine(&num.iter().take(b.rank()).map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        // shift v by its integer part; the fractional remainder of (v + b_1/3) is inside
        let third = Q::new(1.into(), 3.into());
        let w: Vec<Q> = v.iter().zip(&b.vectors()[0]).map(|(a, c)| a + &third * c).collect();
        let y = b.coordinates(&w).unwrap();
        let frac: Vec<Q> = y.iter().map(|c| c - c.floor()).collect();
        let shifted: Vec<Q> = (0..b.dim())
            .map(|j| frac.iter().zip(b.vectors()).map(|(f, r)| f * &r[j]).sum())
            .collect();
        prop_assert!(in_parallelepiped(&shifted, &b).unwrap());
        // a basis vector sits on the closed face y_1 = 1
        prop_assert!(!in_parallelepiped(&b.vectors()[0], &b).unwrap());
    }
}

#[test]
fn cvp_examples_in_the_plane() {
    let z2 = Basis::from_integers(&[vec![1, 0], vec![0, 1]]).unwrap();
    let t = [Q::new(2.into(), 5.into()), Q::new(3.into(), 5.into())];
    assert_eq!(brute_force_cvp(&z2, &t).unwrap(), vec![qi(0), qi(1)]);
}
