use ellvb_core::reps::*;
use ellvb_core::exactalg::fp::FpMatrix;
use ellvb_core::Error;
use proptest::prelude::*;

fn f2() -> Domain {
    Domain::FiniteField(2)
}

/// Rank mod p by plain elimination on i64 rows.
fn rank_mod(mut rows: Vec<Vec<i64>>, p: i64) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c].rem_euclid(p) != 0) else { continue };
        rows.swap(r, piv);
        let inv = (1..p).find(|x| (x * rows[r][c]).rem_euclid(p) == 1).unwrap();
        for i in 0..rows.len() {
            if i != r {
                let f = (rows[i][c] * inv).rem_euclid(p);
                for j in 0..cols {
                    rows[i][j] = (rows[i][j] - f * rows[r][j]).rem_euclid(p);
                }
            }
        }
        r += 1;
    }
    r
}

/// `dim Hom_G(A, B)` from the Kronecker system `X·A_g = B_g·X`, built
/// entry by entry.
fn hom_dim_oracle(a: &MatrixRep, b: &MatrixRep, p: i64) -> usize {
    let (ra, rb) = (a.rank(), b.rank());
    let mut eqs = Vec::new();
    for (ga, gb) in a.generator_matrices().iter().zip(b.generator_matrices()) {
        for i in 0..rb {
            for j in 0..ra {
                // (X ga − gb X)_{ij} in unknowns X_{kl} at k*ra + l
                let mut row = vec![0i64; ra * rb];
                for k in 0..ra {
                    row[i * ra + k] += ga.get(k, j);
                }
                for k in 0..rb {
                    row[k * ra + j] -= gb.get(i, k);
                }
                eqs.push(row);
            }
        }
    }
    ra * rb - rank_mod(eqs, p)
}

#[test]
fn group_orders_and_relations() {
    // brute force over all 2×2 matrices over F3
    let mut invertible = 0;
    let mut det_one = 0;
    for x in 0..81i32 {
        let m = [x % 3, x / 3 % 3, x / 9 % 3, x / 27];
        let d = (m[0] * m[3] - m[1] * m[2]).rem_euclid(3);
        invertible += (d != 0) as usize;
        det_one += (d == 1) as usize;
    }
    assert_eq!(build_group(GroupName::GL2F3).unwrap().order(), invertible);
    assert_eq!(invertible, 48);
    assert_eq!(build_group(GroupName::SL2F3).unwrap().order(), det_one);
    assert_eq!(build_group(GroupName::S3).unwrap().order(), 6);
    assert_eq!(build_group(GroupName::C2xC2).unwrap().order(), 4);
    let q = build_group(GroupName::Q8).unwrap();
    assert_eq!(q.order(), 8);
    // j² = −I mod 3
    let j = [[1i64, 1], [1, -1]];
    let j2: Vec<i64> = (0..4).map(|k| (0..2).map(|t| j[k / 2][t] * j[t][k % 2]).sum::<i64>().rem_euclid(3)).collect();
    assert_eq!(j2, vec![2, 0, 0, 2]);
    let (i, jj) = (q.generators()[0], q.generators()[1]);
    assert_eq!(q.mul(i, i), q.mul(jj, jj));
    assert_eq!(q.element_order(i), 4);
    assert_eq!(q.key(i), &[0, 2, 1, 0]);
}

#[test]
fn subgroup_chain() {
    let q = build_group(GroupName::Q8).unwrap();
    let s = build_group(GroupName::SL2F3).unwrap();
    let g = build_group(GroupName::GL2F3).unwrap();
    assert_eq!(embedding(&q, &s).unwrap().len(), 8);
    assert_eq!(embedding(&s, &g).unwrap().len(), 24);
    assert_eq!(g.coset_reps(&embedding(&q, &g).unwrap()).len(), 6);
    let s3 = build_group(GroupName::S3).unwrap();
    assert!(matches!(embedding(&s3, &g), Err(Error::NotSubgroup(_))));
    assert!(matches!(embedding(&g, &q), Err(Error::NotSubgroup(_))));
    let k = build_group(GroupName::C2xC2).unwrap();
    let rho = q8_to_klein(&q, &k).unwrap();
    let i = q.generators()[0];
    assert_eq!(rho[q.mul(i, i)], k.identity());
    assert_eq!(rho.iter().filter(|&&x| x == k.identity()).count(), 2);
}

#[test]
fn s3_lattice_sequences() {
    let l = s3_lattices().unwrap();
    assert_eq!((l.p.rank(), l.zzeta.rank(), l.ideal.rank()), (3, 2, 2));
    let seq1 = check_exact(&l.diagonal, &l.to_zeta, 3).unwrap();
    assert!(seq1.holds(1), "{seq1:?}");
    let seq2 = check_exact(&l.ideal_to_p, &l.sum, 3).unwrap();
    assert!(seq2.holds(2), "{seq2:?}");
    // t1 ↦ 1 and 1−ζ ↦ t1−t2
    assert_eq!(l.to_zeta.matrix().to_rows().iter().map(|r| r[0]).collect::<Vec<_>>(), vec![1, 0]);
    assert_eq!(l.ideal_to_p.matrix().to_rows().iter().map(|r| r[0]).collect::<Vec<_>>(), vec![1, -1, 0]);
    let three = l.diagonal.compose(&l.sum).unwrap();
    assert_eq!(three.matrix().to_rows(), vec![vec![3]]);
    // the ideal sits in Z[ζ] with index 3
    assert_eq!(l.ideal_inclusion.determinant(), 3.into());
    // P is self-dual through the dual basis, and its double dual is itself
    let d = l.p.dual().unwrap();
    assert!(RepMap::new(d.clone(), l.p.clone(), IntMat::identity(3)).is_ok());
    assert_eq!(d.dual().unwrap(), l.p);
    // a non-equivariant matrix is refused
    assert!(RepMap::new(l.p.clone(), l.p.clone(), IntMat::from_rows(&[vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, 0]]))
        .is_err());
}

#[test]
fn lambda_identification() {
    let l = s3_lattices().unwrap();
    let lam = lambda2_identification().unwrap();
    let into_zeta = lam.compose(&l.ideal_inclusion).unwrap();
    let cols = into_zeta.matrix().to_rows();
    // λ1 ↦ ζ−1 = (−1, 1); λ2 ↦ ζ²−1 = (−2, −1) in the basis (1, ζ)
    assert_eq!((cols[0][0], cols[1][0]), (-1, 1));
    assert_eq!((cols[0][1], cols[1][1]), (-2, -1));
    let det = lam.determinant();
    assert!(Domain::LocalizedAt(3).is_unit(&det));
    assert_eq!(det, 1.into());
}

#[test]
fn m_n_relations_over_the_integers() {
    for n in 0..=6 {
        let m = m_n(n, Domain::Integers).unwrap();
        assert_eq!(m.rank(), 2 * n + 1);
        let g = m.generator_matrices();
        let one = IntMat::identity(2 * n + 1);
        for a in g {
            assert_eq!(a.mul_mod(a, None).unwrap(), one);
        }
        assert_eq!(g[0].mul_mod(&g[1], None).unwrap(), g[1].mul_mod(&g[0], None).unwrap());
    }
    let m0 = m_n(0, Domain::Integers).unwrap();
    assert_eq!(m0.generator_matrices()[0].get(0, 0), 1);
    assert_eq!(m0.generator_matrices()[1].get(0, 0), -1);
    // M_n is free over Z only with the right signs; its reduction is M̄_n
    assert_eq!(m_n(2, Domain::Integers).unwrap().reduce_mod(2).unwrap(), mbar(2).unwrap());
}

#[test]
fn pullback_and_induction() {
    let k = build_group(GroupName::C2xC2).unwrap();
    let q = build_group(GroupName::Q8).unwrap();
    let g = build_group(GroupName::GL2F3).unwrap();
    let t = MatrixRep::trivial(k.clone(), f2()).unwrap();
    let tq = pullback_q8(&t).unwrap();
    assert_eq!(tq, MatrixRep::trivial(q.clone(), f2()).unwrap());
    let m1 = mbar(1).unwrap();
    let p1 = pullback_q8(&m1).unwrap();
    assert_eq!(p1.generator_matrices(), m1.generator_matrices());
    let i = q.generators()[0];
    assert_eq!(p1.matrix_of(q.mul(i, i)), &IntMat::identity(3));
    let ind = p1.induce(&g).unwrap();
    assert_eq!(ind.rank(), 18);
    let perm = tq.induce(&g).unwrap().restrict(&q).unwrap();
    assert_eq!(perm.rank(), 6);
    // Frobenius reciprocity: Hom_G(ind V, W) = Hom_Q(V, res W)
    let w = MatrixRep::trivial(g.clone(), f2()).unwrap().sum(&ind).unwrap();
    assert_eq!(hom_dim_oracle(&ind, &w, 2), hom_dim_oracle(&p1, &w.restrict(&q).unwrap(), 2));
    assert_eq!(hom_space(&ind, &w).unwrap().len(), hom_dim_oracle(&ind, &w, 2));
    // a representation with a broken relation is refused
    let bad = IntMat::from_rows(&[vec![1, 1], vec![0, 1]]);
    assert!(MatrixRep::new(k, Domain::Integers, vec![bad.clone(), bad]).is_err());
}

#[test]
fn endomorphism_algebras() {
    let k = build_group(GroupName::C2xC2).unwrap();
    let t = end_algebra(&MatrixRep::trivial(k, f2()).unwrap()).unwrap();
    assert_eq!((t.dim(), t.radical_dim(), t.quotient_dim()), (1, 0, 1));
    for n in 0..=4 {
        let m = mbar(n).unwrap();
        let e = end_algebra(&m).unwrap();
        assert_eq!(e.dim(), hom_dim_oracle(&m, &m, 2));
        assert_eq!(e.quotient_dim(), 1, "M̄_{n}");
    }
    let m1 = mbar(1).unwrap();
    // brute force over all 3×3 matrices over F2
    let g = m1.generator_matrices();
    let commuting = (0..512u32)
        .filter(|bits| {
            let x = IntMat::from_rows(&(0..3).map(|i| (0..3).map(|j| ((bits >> (3 * i + j)) & 1) as i64).collect()).collect::<Vec<_>>());
            g.iter().all(|a| x.mul_mod(a, Some(2)).unwrap() == a.mul_mod(&x, Some(2)).unwrap())
        })
        .count();
    assert_eq!(1usize << end_algebra(&m1).unwrap().dim(), commuting);
    let two = m1.sum(&m1).unwrap();
    let e = end_algebra(&two).unwrap();
    assert_eq!(e.quotient_dim(), 4);
    // the radical is a nilpotent two-sided ideal
    for r in &e.radical {
        assert!(r.pow(6).is_zero());
        for b in &e.basis {
            for x in [r.mul(b), b.mul(r)] {
                let mut cols: Vec<Vec<u32>> = e.radical.iter().map(|m| m.data().to_vec()).collect();
                let before = FpMatrix::from_columns(2, 36, &cols).rank();
                cols.push(x.data().to_vec());
                assert_eq!(FpMatrix::from_columns(2, 36, &cols).rank(), before);
            }
        }
    }
}

#[test]
fn decomposition_examples() {
    let k = build_group(GroupName::C2xC2).unwrap();
    let m1 = mbar(1).unwrap();
    let v = m1.sum(&MatrixRep::trivial(k, f2()).unwrap()).unwrap();
    let r = decompose(&v, 1, DEFAULT_RANK_BOUND).unwrap();
    let mut ranks = r.summand_ranks();
    ranks.sort();
    assert_eq!(ranks, vec![1, 3]);
    assert!(r.flagged().is_empty());
    assert!(r.contains(&m1).unwrap());

    let q = build_group(GroupName::Q8).unwrap();
    let g = build_group(GroupName::GL2F3).unwrap();
    let ind = pullback_q8(&m1).unwrap().induce(&g).unwrap();
    let r = decompose(&ind, 7, DEFAULT_RANK_BOUND).unwrap();
    assert_eq!(r.summand_ranks().iter().sum::<usize>(), 18);
    assert!(r.summand_ranks().iter().any(|&x| x >= 3));
    for n in 1..=2 {
        let mq = pullback_q8(&mbar(n).unwrap()).unwrap();
        let ri = mq.induce(&g).unwrap().restrict(&q).unwrap();
        assert_eq!(ri.rank(), 6 * (2 * n + 1));
        let r = decompose(&ri, 3, DEFAULT_RANK_BOUND).unwrap();
        assert!(r.contains(&mq).unwrap(), "M̄_{n} not a summand");
        assert!(r.flagged().is_empty());
    }
    let big = MatrixRep::new(
        build_group(GroupName::C2xC2).unwrap(),
        f2(),
        vec![IntMat::identity(130), IntMat::identity(130)],
    )
    .unwrap();
    assert!(matches!(decompose(&big, 0, DEFAULT_RANK_BOUND), Err(Error::OutOfRange(_))));
}

#[test]
fn krs_is_seed_independent() {
    let q = build_group(GroupName::Q8).unwrap();
    let g = build_group(GroupName::GL2F3).unwrap();
    let ri = pullback_q8(&mbar(1).unwrap()).unwrap().induce(&g).unwrap().restrict(&q).unwrap();
    let reports: Vec<_> = (0..5).map(|s| decompose(&ri, 100 + s, DEFAULT_RANK_BOUND).unwrap()).collect();
    for r in &reports[1..] {
        assert_eq!(r.signature(), reports[0].signature());
        assert!(same_krs(r, &reports[0]).unwrap());
    }
}

fn conjugate(rep: &MatrixRep, seed: u64) -> MatrixRep {
    use rand::{Rng, SeedableRng};
    let n = rep.rank();
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let (p, p_inv) = loop {
        let m = FpMatrix::from_i64(2, n, n, &(0..n * n).map(|_| rng.gen_range(0..2)).collect::<Vec<_>>());
        if let Some(inv) = m.inverse() {
            break (m, inv);
        }
    };
    let gens = rep
        .generator_matrices()
        .iter()
        .map(|g| IntMat::from_fp(&p_inv.mul(&g.to_fp(2)).mul(&p)))
        .collect();
    MatrixRep::new(rep.group().clone(), rep.domain(), gens).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scrambled_sums_of_mbar_decompose_back(ns in proptest::collection::vec(0usize..4, 1..4), seed in any::<u64>()) {
        let mut v = mbar(ns[0]).unwrap();
        for &n in &ns[1..] {
            v = v.sum(&mbar(n).unwrap()).unwrap();
        }
        let v = conjugate(&v, seed);
        let r = decompose(&v, seed, DEFAULT_RANK_BOUND).unwrap();
        let mut got = r.summand_ranks();
        got.sort();
        let mut want: Vec<usize> = ns.iter().map(|n| 2 * n + 1).collect();
        want.sort();
        prop_assert_eq!(got, want);
        for &n in &ns {
            prop_assert!(r.contains(&mbar(n).unwrap()).unwrap());
        }
    }

    #[test]
    fn constructed_reps_satisfy_relations(n in 0usize..4, which in 0usize..3) {
        let q = build_group(GroupName::Q8).unwrap();
        let g = build_group(GroupName::GL2F3).unwrap();
        let m = pullback_q8(&mbar(n).unwrap()).unwrap();
        let rep = match which {
            0 => m.dual().unwrap(),
            1 => m.tensor(&m).unwrap(),
            _ => m.induce(&g).unwrap().restrict(&q).unwrap(),
        };
        // every product of group elements is represented by the product
        for a in 0..rep.group().order() {
            for b in 0..rep.group().order() {
                let ab = rep.group().mul(a, b);
                prop_assert_eq!(rep.matrix_of(a).mul_mod(rep.matrix_of(b), Some(2)).unwrap(), rep.matrix_of(ab).clone());
            }
        }
    }
}
