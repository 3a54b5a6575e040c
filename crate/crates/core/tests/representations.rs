use bmw_core::combinatorics::{classify_cyclotomic, Multicharge};
use bmw_core::linalg::Subspace;
use bmw_core::presentation::{CyclotomicAlgebra, PresentationConfig, SparseVec, StructureAlgebra, Variant};
use bmw_core::repn::{
    analyze, count_simples, functor_grading_check, radical, simple_modules, truncate_module, ModuleRep,
};
use bmw_core::{Field, ParameterSet, PrimeField, Rationals};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(11)
}

/// Group algebra from a multiplication table on `0..m`, identity `0`.
fn group_algebra<F: Field>(f: F, table: &[Vec<usize>]) -> StructureAlgebra<F> {
    let m = table.len();
    let products = table
        .iter()
        .map(|row| row.iter().map(|&k| vec![(k, f.one())]).collect())
        .collect();
    let mut unit = vec![f.zero(); m];
    unit[0] = f.one();
    StructureAlgebra::from_table(f, (0..m).map(|i| format!("h{i}")).collect(), products, unit)
}

fn cyclic(m: usize) -> Vec<Vec<usize>> {
    (0..m).map(|i| (0..m).map(|j| (i + j) % m).collect()).collect()
}

fn symmetric3() -> Vec<Vec<usize>> {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let index = |p: [usize; 3]| perms.iter().position(|x| *x == p).unwrap();
    perms
        .iter()
        .map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect())
        .collect()
}

/// Upper triangular `k x k` matrices, basis `E_ij` with `i <= j`.
fn upper_triangular(f: PrimeField, k: usize) -> StructureAlgebra<PrimeField> {
    let units: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
    let pos = |p: (usize, usize)| units.iter().position(|x| *x == p).unwrap();
    let table: Vec<Vec<SparseVec<u64>>> = units
        .iter()
        .map(|&(i, j)| {
            units
                .iter()
                .map(|&(a, b)| if j == a { vec![(pos((i, b)), 1)] } else { Vec::new() })
                .collect()
        })
        .collect();
    let mut unit = vec![0; units.len()];
    for i in 0..k {
        unit[pos((i, i))] = 1;
    }
    StructureAlgebra::from_table(f, units.iter().map(|(i, j)| format!("E{i}{j}")).collect(), table, unit)
}

/// All elements of a small algebra over GF(p).
fn all_elements(a: &StructureAlgebra<PrimeField>) -> Vec<Vec<u64>> {
    let p = a.field().modulus();
    let d = a.dim();
    (0..p.pow(d as u32))
        .map(|mut k| {
            (0..d)
                .map(|_| {
                    let c = k % p;
                    k /= p;
                    c
                })
                .collect()
        })
        .collect()
}

fn is_nilpotent(a: &StructureAlgebra<PrimeField>, x: &[u64]) -> bool {
    let mut y = x.to_vec();
    for _ in 0..a.dim() {
        y = a.mul(&y, x);
    }
    y.iter().all(|c| *c == 0)
}

/// The radical by exhaustion: `x` with `x y` nilpotent for every `y`.
fn brute_force_radical_size(a: &StructureAlgebra<PrimeField>) -> usize {
    let all = all_elements(a);
    all.iter()
        .filter(|x| all.iter().all(|y| is_nilpotent(a, &a.mul(x, y))))
        .count()
}

fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

#[test]
fn radical_matches_exhaustive_search() {
    let cases: Vec<(&str, StructureAlgebra<PrimeField>)> = vec![
        ("F3[C3]", group_algebra(gf(3), &cyclic(3))),
        ("F2[C2]", group_algebra(gf(2), &cyclic(2))),
        ("F2[C4]", group_algebra(gf(2), &cyclic(4))),
        ("F3[C2]", group_algebra(gf(3), &cyclic(2))),
        ("F2[S3]", group_algebra(gf(2), &symmetric3())),
        ("F3[S3]", group_algebra(gf(3), &symmetric3())),
        ("UT3(F2)", upper_triangular(gf(2), 3)),
        ("UT2(F5)", upper_triangular(gf(5), 2)),
    ];
    for (name, a) in cases {
        let rad = radical(&a);
        let expect = brute_force_radical_size(&a);
        let p = a.field().modulus() as usize;
        assert_eq!(p.pow(rad.dim() as u32), expect, "{name}");
        for v in rad.basis() {
            assert!(is_nilpotent(&a, v), "{name}");
        }
    }
}

/// Closed under multiplication on both sides by basis elements, and some
/// power of it vanishes.
fn assert_nilpotent_ideal<F: Field>(a: &StructureAlgebra<F>, rad: &Subspace<F>) {
    for v in rad.basis() {
        for j in 0..a.dim() {
            let b = a.basis_vector(j);
            assert!(rad.contains(&a.mul(v, &b)));
            assert!(rad.contains(&a.mul(&b, v)));
        }
    }
    let mut power: Vec<Vec<F::Elem>> = rad.basis().to_vec();
    for _ in 0..=a.dim() {
        if power.is_empty() {
            return;
        }
        let mut next = Subspace::new(a.field().clone(), a.dim());
        for x in &power {
            for y in rad.basis() {
                next.insert(a.mul(x, y));
            }
        }
        power = next.basis().to_vec();
    }
    assert!(power.is_empty(), "radical is not nilpotent");
}

fn admissible(r: usize) -> ParameterSet<PrimeField> {
    ParameterSet::admissible(gf(101), 3, [2u64, 5, 7][..r].to_vec(), 0).unwrap()
}

fn build<F: Field>(n: usize, p: ParameterSet<F>, v: Variant) -> CyclotomicAlgebra<F> {
    CyclotomicAlgebra::build(n, p, v, PresentationConfig::default(), None).unwrap()
}

/// `r = 1`, `u = q^-1`, `rho = q`: every omega vanishes.
fn omega_zero(field: PrimeField, q: u64) -> ParameterSet<PrimeField> {
    let p = ParameterSet::admissible(field, q, vec![field.inv(&q).unwrap()], 0).unwrap();
    assert!(p.omega_vanishing_report().unwrap().all_zero);
    p
}

#[test]
fn omega_zero_bmw_radical_matches_exhaustive_search() {
    // GF(5), q = 2: dimension 3 so all 125 elements can be tried
    let a = build(2, omega_zero(gf(5), 2), Variant::Bmw);
    assert_eq!(a.dim(), 3);
    let rad = radical(a.structure());
    assert_eq!(5usize.pow(rad.dim() as u32), brute_force_radical_size(a.structure()));
}

#[test]
fn radical_is_a_nilpotent_ideal_and_quotient_is_semisimple() {
    let mut r = rng();
    let algebras = vec![
        build(2, omega_zero(gf(101), 16), Variant::Bmw),
        build(3, omega_zero(gf(101), 16), Variant::Bmw),
        build(
            3,
            ParameterSet::admissible(gf(101), 3, vec![9], 0).unwrap(),
            Variant::Bmw,
        ),
        build(
            2,
            ParameterSet::admissible(gf(101), 10, vec![1], 0).unwrap(),
            Variant::ArikiKoike,
        ),
    ];
    for a in &algebras {
        let s = a.structure();
        let w = analyze(s, &mut r);
        assert_nilpotent_ideal(s, w.radical());
        assert_eq!(radical(&w.quotient).dim(), 0);
        let squares: usize = w.report.blocks.iter().map(|d| d * d).sum();
        assert!(w.report.split);
        assert_eq!(squares + w.report.radical_dim, a.dim());
        assert_eq!(w.report.sum_of_squares(), squares);
    }
}

#[test]
fn generic_small_instances() {
    let mut r = rng();
    let a = build(2, admissible(1), Variant::Bmw);
    let w = analyze(a.structure(), &mut r);
    assert_eq!(w.report.radical_dim, 0);
    assert_eq!(w.report.blocks, vec![1, 1, 1]);
    // the three block idempotents are orthogonal idempotents summing to 1
    let s = &w.quotient;
    let mut total = s.zero_vector();
    for (i, bi) in w.blocks.iter().enumerate() {
        assert!(s.is_idempotent(&bi.idempotent));
        for (j, bj) in w.blocks.iter().enumerate() {
            if i != j {
                assert!(s.mul(&bi.idempotent, &bj.idempotent).iter().all(|c| *c == 0));
            }
        }
        for (t, c) in total.iter_mut().zip(&bi.idempotent) {
            *t = s.field().add(t, c);
        }
    }
    assert_eq!(total, s.unit().to_vec());

    let a = build(3, admissible(1), Variant::Bmw);
    let w = analyze(a.structure(), &mut r);
    let mut blocks = w.report.blocks.clone();
    blocks.sort_unstable();
    assert_eq!(blocks, vec![1, 1, 2, 3]);
    assert_eq!(count_simples(a.structure(), &mut r), (4, true));
}

#[test]
fn rational_instance() {
    let q = |v: i64| Rationals.from_i64(v);
    let p = ParameterSet::admissible(Rationals, q(3), vec![q(2)], 0).unwrap();
    let a = build(3, p, Variant::Bmw);
    let mut r = rng();
    let w = analyze(a.structure(), &mut r);
    assert_eq!(w.report.radical_dim, 0);
    let mut blocks = w.report.blocks.clone();
    blocks.sort_unstable();
    assert_eq!(blocks, vec![1, 1, 2, 3]);
    assert!(w.report.split);
    let k = group_algebra(Rationals, &cyclic(2));
    assert_eq!(radical(&k).dim(), 0);
}

#[test]
fn non_split_quotients_are_flagged() {
    let mut r = rng();
    // F3[C4] = F3 x F3 x F9
    let a = group_algebra(gf(3), &cyclic(4));
    let w = analyze(&a, &mut r);
    assert_eq!(w.report.radical_dim, 0);
    assert!(!w.report.split);
    assert_eq!(w.blocks.len(), 3);
    assert_eq!(w.blocks.iter().filter(|b| b.degree.is_none()).count(), 1);
    assert_eq!(count_simples(&a, &mut r), (3, false));
    assert!(simple_modules(&a, &w, &mut r).is_err());
    // Q[C3] = Q x Q(zeta_3)
    let q = group_algebra(Rationals, &cyclic(3));
    let w = analyze(&q, &mut r);
    assert!(!w.report.split);
    assert_eq!(w.blocks.len(), 2);
}

#[test]
fn ariki_koike_at_e_two_has_one_simple() {
    // q = 10: q^2 = -1 in GF(101)
    let p = ParameterSet::admissible(gf(101), 10, vec![1], 0).unwrap();
    let a = build(2, p.clone(), Variant::ArikiKoike);
    let mut r = rng();
    assert_eq!(count_simples(a.structure(), &mut r), (1, true));
    // one Kleshchev partition of 2 at level 1, e = 2
    let mc = Multicharge::new(bmw_core::Order::Finite(2), vec![0]).unwrap();
    let kleshchev = bmw_core::combinatorics::enumerate_multipartitions(1, 2)
        .into_iter()
        .filter(|l| bmw_core::combinatorics::is_kleshchev(l, &mc).unwrap())
        .count();
    assert_eq!(kleshchev, 1);
    // every simple is killed by truncation since e_1 = 0
    let w = analyze(a.structure(), &mut r);
    let simples = simple_modules(a.structure(), &w, &mut r).unwrap();
    let e = a.to_vector(&a.truncation_idempotent().unwrap());
    assert!(e.iter().all(|c| *c == 0));
    let corner = a.structure().corner_algebra(&e).unwrap();
    let rep = functor_grading_check(&corner, &simples).unwrap();
    assert_eq!(rep.annihilated, simples.len());
}

#[test]
fn omega_zero_count_excludes_top_block() {
    let p = omega_zero(gf(101), 16);
    let mc = Multicharge::from_params(&p).unwrap();
    let expect = classify_cyclotomic(&p, &mc, 2).unwrap();
    assert!(expect.iter().all(|x| x.f == 0));
    let a = build(2, p, Variant::Bmw);
    let mut r = rng();
    assert_eq!(count_simples(a.structure(), &mut r), (expect.len(), true));
}

#[test]
fn simple_modules_are_absolutely_irreducible_modules() {
    let mut r = rng();
    for a in [
        build(3, admissible(1), Variant::Bmw),
        build(2, admissible(2), Variant::Bmw),
        build(3, omega_zero(gf(101), 16), Variant::Bmw),
    ] {
        let w = analyze(a.structure(), &mut r);
        let simples = simple_modules(a.structure(), &w, &mut r).unwrap();
        assert_eq!(simples.len(), w.report.blocks.len());
        let mut dims: Vec<usize> = simples.iter().map(|m| m.dim()).collect();
        let mut blocks = w.report.blocks.clone();
        dims.sort_unstable();
        blocks.sort_unstable();
        assert_eq!(dims, blocks);
        for m in &simples {
            assert!(m.is_absolutely_irreducible());
            assert!(m.respects(a.structure(), 200, &mut r));
        }
    }
}

#[test]
fn truncating_the_regular_module() {
    let a = build(3, admissible(1), Variant::Bmw);
    let s = a.structure();
    let m = ModuleRep::regular(s);
    let mut r = rng();
    assert!(m.respects(s, 200, &mut r));
    let e = a.to_vector(&a.truncation_idempotent().unwrap());
    let corner = s.corner_algebra(&e).unwrap();
    let me = truncate_module(&m, &corner).unwrap();
    assert_eq!(me.dim(), m.action_of(&e).rank(s.field()));
    // complementary idempotent
    let f = s.field();
    let comp: Vec<u64> = s.unit().iter().zip(&e).map(|(u, x)| f.sub(u, x)).collect();
    let other = truncate_module(&m, &s.corner_algebra(&comp).unwrap()).unwrap();
    assert_eq!(me.dim() + other.dim(), m.dim());
    let not_idem = a.generator_vector(bmw_core::presentation::Generator::G(1));
    let fake = bmw_core::presentation::CornerAlgebra {
        algebra: corner.algebra.clone(),
        embedding: corner.embedding.clone(),
        idempotent: not_idem,
    };
    assert!(truncate_module(&m, &fake).is_err());
}

#[test]
fn functor_on_generic_rank_one_three_strands() {
    let p = ParameterSet::admissible(gf(101), 3, vec![gf(101).pow(&9, 3).unwrap()], 0).unwrap();
    let mc = Multicharge::from_params(&p).unwrap();
    let cls = classify_cyclotomic(&p, &mc, 3).unwrap();
    let a = build(3, p, Variant::Bmw);
    let mut r = rng();
    let w = analyze(a.structure(), &mut r);
    let simples = simple_modules(a.structure(), &w, &mut r).unwrap();
    let e = a.to_vector(&a.truncation_idempotent().unwrap());
    let corner = a.structure().corner_algebra(&e).unwrap();
    let rep = functor_grading_check(&corner, &simples).unwrap();
    assert_eq!(rep.annihilated, cls.iter().filter(|x| x.f == 0).count());
    assert_eq!(rep.survivors, 1);
    assert!(rep.survivors_simple);
}

#[test]
fn three_strand_corners_are_commutative_of_rank_r() {
    let mut r = rng();
    for rank in 1..=2 {
        let a = build(3, admissible(rank), Variant::Bmw);
        let s = a.structure();
        let e = a.to_vector(&a.truncation_idempotent().unwrap());
        let corner = s.corner_algebra(&e).unwrap();
        assert_eq!(corner.dim(), rank);
        let c = &corner.algebra;
        for i in 0..c.dim() {
            for j in 0..c.dim() {
                let (x, y) = (c.basis_vector(i), c.basis_vector(j));
                assert_eq!(c.mul(&x, &y), c.mul(&y, &x));
            }
        }
        let w = analyze(s, &mut r);
        let simples = simple_modules(s, &w, &mut r).unwrap();
        let rep = functor_grading_check(&corner, &simples).unwrap();
        assert!(rep.survivors <= rank);
        assert!(rep.survivors_simple);
    }
    // on two strands the corner is the ground field
    for rank in 1..=3 {
        let a = build(2, admissible(rank), Variant::Bmw);
        let e = a.to_vector(&a.truncation_idempotent().unwrap());
        assert_eq!(a.structure().corner_algebra(&e).unwrap().dim(), 1);
    }
}
