//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! Fixtures beyond the enumerator's range (orders 7..9) are built from
//! cyclic groups and central extensions with non-cocycle twists; every
//! fixture's defining properties are re-checked here before use.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use finloop::clone::{binary_term_clone, loop_tables_in, mul_table};
use finloop::clonoid::{
    clone_decomposition_check, clonoid_span, find_basis_parameter, normalize_term, terms_equal,
    ClonoidContext, FnTable, TermAst,
};
use finloop::groups::{abelian_reduct, builtin, dihedral_reduct_class_scan, reduct_family, GroupView};
use finloop::loops::subloop::center;
use finloop::loops::{
    central_extension, direct_product, is_isomorphic, upper_central_series, NormalSubloop, Subloop,
};
use finloop::reduct::{build_reduct, corollary_reduct};
use finloop::supernilpotence::{is_supernilpotent_decomp, is_supernilpotent_wright};
use finloop::FiniteLoop;

use finloop_cli::certificate::{verify_certificate, CertificateDocument};
use finloop_cli::enumerate::{enumerate_loops, LoopFilter};

/// Nilpotent non-associative loops of order 2m from a central Z2
/// extension of Z_m with a one-cell twist.
fn twisted_extension(base: usize, kernel: usize, cell: (usize, usize)) -> FiniteLoop {
    let b = builtin::cyclic(base);
    let l = central_extension(&b, kernel, |x, y| usize::from((x, y) == cell)).unwrap();
    assert!(!l.is_associative(), "twist must break associativity");
    assert!(
        upper_central_series(&l).unwrap().nilpotent,
        "extension must stay nilpotent"
    );
    l
}

/// Order 7-9 nilpotent fixtures: every nilpotent loop of prime order is
/// the cyclic group, so order 7 contributes Z7; orders 8 and 9 mix groups
/// and non-associative extensions.
fn nilpotent_fixtures_7_to_9() -> Vec<FiniteLoop> {
    vec![
        builtin::cyclic(7),
        builtin::cyclic(8),
        direct_product(&builtin::cyclic(2), &builtin::cyclic(4)),
        direct_product(
            &builtin::cyclic(2),
            &direct_product(&builtin::cyclic(2), &builtin::cyclic(2)),
        ),
        builtin::dihedral(4),
        builtin::quaternion8(),
        twisted_extension(4, 2, (1, 1)),
        twisted_extension(4, 2, (2, 3)),
        builtin::cyclic(9),
        direct_product(&builtin::cyclic(3), &builtin::cyclic(3)),
        twisted_extension(3, 3, (1, 1)),
        twisted_extension(3, 3, (2, 2)),
    ]
}

fn group_fixtures_up_to_16() -> Vec<FiniteLoop> {
    let mut out: Vec<FiniteLoop> = (1..=16).map(builtin::cyclic).collect();
    out.push(builtin::dihedral(4));
    out.push(builtin::dihedral(8));
    out.push(builtin::quaternion8());
    out.push(builtin::symmetric3());
    out.push(direct_product(&builtin::cyclic(2), &builtin::cyclic(4)));
    out.push(direct_product(&builtin::cyclic(2), &builtin::cyclic(6)));
    out.push(direct_product(&builtin::cyclic(3), &builtin::cyclic(3)));
    out.push(direct_product(&builtin::cyclic(4), &builtin::cyclic(4)));
    out
}

#[test]
fn criterion_01_order6_reducts_are_abelian_z6() {
    let nilpotent = enumerate_loops(6, LoopFilter::Nilpotent, true).unwrap();
    assert!(!nilpotent.is_empty());
    let z6 = builtin::cyclic(6);
    for l in &nilpotent {
        let cert = build_reduct(l).expect("nilpotent input must yield a reduct");
        assert!(cert.final_star.is_associative());
        assert!(cert.final_star.is_commutative());
        assert!(is_isomorphic(&cert.final_star, &z6).is_some());
    }
    println!(
        "criterion 1 PASS: {} nilpotent order-6 classes, every reduct abelian and ≅ Z6",
        nilpotent.len()
    );
}

#[test]
fn criterion_02_certificates_verify_independently() {
    let mut inputs = enumerate_loops(6, LoopFilter::Nilpotent, true).unwrap();
    inputs.extend(nilpotent_fixtures_7_to_9().into_iter().filter(|l| l.order() <= 8));
    let mut verified = 0;
    for l in &inputs {
        let cert = build_reduct(l).unwrap();
        // term DAG reproduces the final table on all pairs
        for x in 0..l.order() {
            for y in 0..l.order() {
                assert_eq!(cert.eval_final(x, y).unwrap(), cert.final_star.mul(x, y));
            }
        }
        let doc = CertificateDocument::from_certificate(&cert);
        // round-trip through JSON before verifying, as the CLI would
        let doc = CertificateDocument::from_json(&doc.to_json().unwrap()).unwrap();
        let report = verify_certificate(&doc, l);
        assert!(
            report.passed(),
            "order {} failed: {:?}",
            l.order(),
            report
                .checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| c.name.clone())
                .collect::<Vec<_>>()
        );
        verified += 1;
    }
    println!("criterion 2 PASS: {verified} certificates re-verified without the builder");
}

#[test]
fn criterion_03_wright_crosscheck_has_zero_exceptions() {
    let mut tested = 0;
    for order in 1..=6 {
        for l in enumerate_loops(order, LoopFilter::All, false).unwrap() {
            let decomp = is_supernilpotent_decomp(&l).unwrap().is_some();
            let wright = is_supernilpotent_wright(&l).unwrap();
            assert_eq!(decomp, wright, "disagreement at order {order}");
            tested += 1;
        }
    }
    for g in group_fixtures_up_to_16() {
        let decomp = is_supernilpotent_decomp(&g).unwrap().is_some();
        let wright = is_supernilpotent_wright(&g).unwrap();
        assert_eq!(decomp, wright, "disagreement on group of order {}", g.order());
        tested += 1;
    }
    println!("criterion 3 PASS: decomposition and Mlt-nilpotence agree on {tested} loops");
}

#[test]
fn criterion_04_prime_power_fixpoint() {
    let mut corpus: Vec<FiniteLoop> = Vec::new();
    for order in [1usize, 2, 3, 4, 5] {
        corpus.extend(enumerate_loops(order, LoopFilter::Nilpotent, false).unwrap());
    }
    corpus.extend(
        nilpotent_fixtures_7_to_9()
            .into_iter()
            .filter(|l| finloop::arith::prime_power(l.order() as u64).is_some()),
    );
    let mut tested = 0;
    for l in &corpus {
        assert!(finloop::arith::prime_power(l.order() as u64).is_some() || l.order() == 1);
        let cert = build_reduct(l).unwrap();
        assert_eq!(cert.final_star, *l, "order {} not a fixpoint", l.order());
        tested += 1;
    }
    println!("criterion 4 PASS: star equals the input table on {tested} prime-power loops");
}

#[test]
fn criterion_05_corollary_through_the_center() {
    let fixtures = enumerate_loops(6, LoopFilter::NilpotentNonassociative, true).unwrap();
    assert!(!fixtures.is_empty());
    for l in &fixtures {
        let z = center(l).unwrap();
        let c = corollary_reduct(l, &z).unwrap();
        let star = &c.certificate.final_star;
        for x in 0..6 {
            for y in 0..6 {
                let r = c.r_table[x * 6 + y];
                assert!(z.contains(r), "r value escapes N");
                assert_eq!(star.mul(r, star.mul(x, y)), l.mul(x, y), "reconstruction fails");
            }
        }
        assert!(is_supernilpotent_decomp(star).unwrap().is_some());
    }
    println!(
        "criterion 5 PASS: r maps into the center and x·y = r(x,y)*(x*y) on all 36 pairs, {} fixtures",
        fixtures.len()
    );
}

#[test]
fn criterion_06_s3_is_rejected_with_exit_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s3.loop");
    std::fs::write(&path, finloop_cli::loopfile::serialize_loop(&builtin::symmetric3())).unwrap();
    let code = finloop_cli::run(["finloop", "reduct", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    println!("criterion 6 PASS: reduct on S3 exits with code 2 (NotNilpotent)");
}

fn random_nonzero_f(rng: &mut StdRng, q: u64, p: u64) -> FnTable {
    loop {
        let mut values: Vec<u64> = vec![0];
        values.extend((1..q).map(|_| rng.gen_range(0..p)));
        if values.iter().any(|&v| v != 0) {
            return FnTable::unary(q, p, values).unwrap();
        }
    }
}

#[test]
fn criterion_07_dimension_formula_for_random_clonoids() {
    let mut rng = StdRng::seed_from_u64(0x5eed_c107);
    let mut tested = 0;
    for (q, p) in [(3u64, 2u64), (5, 2), (3, 5)] {
        for _ in 0..20 {
            let f = random_nonzero_f(&mut rng, q, p);
            let basis = find_basis_parameter(&f).unwrap();
            for n in [1usize, 2] {
                let dim = clonoid_span(&f, n).dim();
                let formula = basis.k * ((q as usize).pow(n as u32) - 1) / (q as usize - 1);
                assert_eq!(dim, formula, "q={q} p={p} n={n} f={:?}", f.values());
            }
            tested += 1;
        }
    }
    println!("criterion 7 PASS: dim C^[n] = k(q^n-1)/(q-1) for {tested} random f, n in {{1,2}}");
}

fn random_term(rng: &mut StdRng, arity: usize, depth: usize) -> TermAst {
    if depth == 0 || rng.gen_ratio(1, 4) {
        return TermAst::var(rng.gen_range(0..arity));
    }
    match rng.gen_range(0..4) {
        0 => random_term(rng, arity, depth - 1).add(random_term(rng, arity, depth - 1)),
        1 => random_term(rng, arity, depth - 1).repeat(rng.gen_range(0..12)),
        2 => random_term(rng, arity, depth - 1).apply(),
        _ => random_term(rng, arity, depth - 1),
    }
}

#[test]
fn criterion_08_rewriting_soundness_and_completeness() {
    let mut rng = StdRng::seed_from_u64(0x5eed_c108);
    let configs = [
        (3u64, 2u64, vec![0, 1, 1]),
        (5, 2, vec![0, 1, 0, 0, 1]),
        (3, 5, vec![0, 2, 1]),
    ];
    for (q, p, values) in configs {
        let ctx = ClonoidContext::new(FnTable::unary(q, p, values).unwrap()).unwrap();
        for _ in 0..500 {
            let arity = rng.gen_range(1..=3);
            let t = random_term(&mut rng, arity, 4);
            let nf = normalize_term(&ctx, &t, arity).unwrap();
            assert_eq!(
                ctx.eval_table(&t, arity).unwrap(),
                ctx.eval_table(&nf.to_ast(q, p), arity).unwrap(),
                "normalization changed the function (q={q}, p={p})"
            );
        }
        for _ in 0..200 {
            let arity = rng.gen_range(1..=2);
            let t1 = random_term(&mut rng, arity, 4);
            let t2 = random_term(&mut rng, arity, 4);
            // terms_equal errors if normal-form equality and pointwise
            // equality ever disagree
            terms_equal(&ctx, &t1, &t2, arity).unwrap();
        }
    }
    println!(
        "criterion 8 PASS: 500 terms and 200 pairs per configuration, \
         rewriting sound and equality complete"
    );
}

#[test]
fn criterion_09_group_reduct_classification() {
    const CAP: usize = 100_000;
    for (name, g) in [("D8", builtin::dihedral(4)), ("Q8", builtin::quaternion8())] {
        let view = GroupView::new(g.clone()).unwrap();
        let family = reduct_family(&view).unwrap();
        assert_eq!(family.len(), 2, "{name} family size");
        assert_eq!(family[0].member, g);
        let opposite = &family[1].member;
        for x in 0..8 {
            for y in 0..8 {
                assert_eq!(opposite.mul(x, y), g.mul(y, x), "{name} second member");
            }
        }
        // the bounded clone oracle finds no further group tables
        let clone_set = binary_term_clone(&g, CAP).unwrap();
        let loop_tables = loop_tables_in(&clone_set, 8);
        let group_tables: Vec<_> = loop_tables
            .into_iter()
            .filter(|rows| FiniteLoop::from_rows(rows.clone()).unwrap().is_associative())
            .collect();
        assert_eq!(group_tables.len(), 2, "{name} oracle");
        let family_rows: Vec<Vec<Vec<usize>>> =
            family.iter().map(|m| m.member.rows()).collect();
        for rows in &group_tables {
            assert!(family_rows.contains(rows), "{name}: oracle found a stranger");
        }
        println!(
            "criterion 9: {name} clone closure size {} under cap {CAP}, exactly the 2 reducts",
            clone_set.len()
        );
        assert!(abelian_reduct(&view).unwrap().is_none(), "{name} abelian");
    }
    let heis = GroupView::new(builtin::heisenberg(3)).unwrap();
    let (c, table) = abelian_reduct(&heis).unwrap().expect("odd derived exponent");
    assert_eq!(c, 1);
    assert!(table.is_associative() && table.is_commutative());
    println!("criterion 9 PASS: D8/Q8 have exactly {{G, G^op}}, Heisenberg-27 abelian at c = 1");
}

#[test]
fn criterion_10_dihedral_class_preservation() {
    let scan = dihedral_reduct_class_scan(3).unwrap();
    assert_eq!(scan.order, 16);
    let classes = scan.group_classes();
    assert!(!classes.is_empty());
    assert!(classes.iter().all(|&k| k == 3), "classes {classes:?}");
    println!(
        "criterion 10 PASS: all {} group members of the D16 family have class exactly 3",
        classes.len()
    );
}

#[test]
fn criterion_11_wreath_facts() {
    let r = finloop::groups::wreath_obstruction_facts().unwrap();
    assert_eq!(r.order, 81);
    assert_eq!(r.exponent, 9);
    assert_eq!(r.base_order, 27);
    assert!(r.base_is_normal && r.base_is_abelian);
    assert_eq!(r.base_exponent, 3);
    assert!(r.base_is_elementary_abelian);
    assert!(r.outside_order3_witness.is_some());
    println!(
        "criterion 11 PASS: Z3 wr Z3 has order 81, exponent 9, an elementary-abelian normal \
         subgroup of order 27, and an order-3 element outside it"
    );
}

#[test]
fn criterion_12_clone_decomposition() {
    const CAP: usize = 200_000;
    // central-by-supernilpotent fixtures of order <= 8: (loop, central N)
    let mut fixtures: Vec<(String, FiniteLoop, Vec<usize>)> = vec![
        ("Z4 / {0,2}".into(), builtin::cyclic(4), vec![0, 2]),
        ("Z6 / {0,3}".into(), builtin::cyclic(6), vec![0, 3]),
        ("Z6 / {0,2,4}".into(), builtin::cyclic(6), vec![0, 2, 4]),
        ("Z8 / {0,4}".into(), builtin::cyclic(8), vec![0, 4]),
        ("D8 / center".into(), builtin::dihedral(4), vec![0, 2]),
        ("Q8 / center".into(), builtin::quaternion8(), vec![0, 2]),
    ];
    for (i, l) in enumerate_loops(6, LoopFilter::NilpotentNonassociative, true)
        .unwrap()
        .into_iter()
        .enumerate()
    {
        let z = center(&l).unwrap().elements().to_vec();
        fixtures.push((format!("order-6 fixture {i} / center"), l, z));
    }
    let ext8 = twisted_extension(4, 2, (1, 1));
    let z8 = center(&ext8).unwrap();
    let kernel: Vec<usize> = vec![0, 1]; // the Z2 kernel, inside the center
    assert!(kernel.iter().all(|&x| z8.contains(x)));
    fixtures.push(("order-8 extension / kernel".into(), ext8, kernel));

    for (name, l, n_elems) in fixtures {
        let n = NormalSubloop::checked(&l, Subloop::checked(&l, n_elems).unwrap()).unwrap();
        let report = clone_decomposition_check(&l, &n, CAP).unwrap();
        assert!(report.equal, "{name}: sides differ ({report:?})");
        println!(
            "criterion 12: {name}: clone {} = star-clone {} x clonoid {} (cap {})",
            report.clone_size, report.star_clone_size, report.clonoid_size, report.cap
        );
    }
    println!("criterion 12 PASS: Clo(A) = {{f*w}} on every central-by-supernilpotent fixture");
}

#[test]
fn enumerator_regression_counts() {
    // loops of order 6: 9408 tables, 109 isomorphism classes; of these
    // 3 are nilpotent and 2 of those are not associative
    assert_eq!(enumerate_loops(6, LoopFilter::All, false).unwrap().len(), 9408);
    assert_eq!(enumerate_loops(6, LoopFilter::All, true).unwrap().len(), 109);
    assert_eq!(enumerate_loops(6, LoopFilter::Nilpotent, true).unwrap().len(), 3);
    let nonassoc = enumerate_loops(6, LoopFilter::NilpotentNonassociative, true).unwrap();
    assert_eq!(nonassoc.len(), 2);
    // none of the non-associative nilpotent loops decomposes: these are
    // the classical non-product witnesses
    for l in &nonassoc {
        assert!(is_supernilpotent_decomp(l).unwrap().is_none());
        assert!(!is_supernilpotent_wright(l).unwrap());
    }
    // left-associated sixth powers collapse to the identity on them
    for l in &nonassoc {
        for x in l.elements() {
            assert_eq!(l.left_power(x, 6), 0);
        }
    }
}

#[test]
fn mlt_group_is_not_nilpotent_for_the_nonproduct_loops() {
    // Wright's criterion seen from the multiplication-group side
    let nonassoc = enumerate_loops(6, LoopFilter::NilpotentNonassociative, true).unwrap();
    for l in &nonassoc {
        let mlt = finloop::perm::mlt_group(&l);
        assert!(!finloop::perm::is_nilpotent_group(&mlt).unwrap().nilpotent);
    }
}

#[test]
fn s3_clone_contains_no_supernilpotent_loop_table() {
    // regression for the non-nilpotent gate: even searching all binary
    // terms of S3 yields no supernilpotent loop structure
    let s3 = builtin::symmetric3();
    let clone_set = binary_term_clone(&s3, 100_000).unwrap();
    assert!(clone_set.contains(&mul_table(&s3)));
    let mut loop_count = 0;
    for rows in loop_tables_in(&clone_set, 6) {
        let l = FiniteLoop::from_rows(rows).unwrap();
        assert!(is_supernilpotent_decomp(&l).unwrap().is_none());
        loop_count += 1;
    }
    println!(
        "S3: clone size {}, {} loop tables found, none supernilpotent",
        clone_set.len(),
        loop_count
    );
}
