//! Acceptance suite: one test per criterion. Each test prints a summary
//! line and fails loudly if its criterion is not met exactly.

use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qcalc::ast::{Ast, Span, Statement};
use qcalc::eval::{Outcome, Session};
use qcalc::parser::{parse_expression, parse_file};
use qspace::dimensions::DimVector;
use qspace::finite::{
    check_axioms, congruence_quotient, orbit_partition, quotient_homomorphism_witness,
    standard_inventory, tensor_product, verify_model, verify_tensor_associativity, CongruenceKind,
    FiniteScalableMonoid,
};
use qspace::quantity::{Quantity, QuantitySpace};
use qspace::quotient::{build_quotient, pi_groups, QuotientError};
use qspace::registry::{change_basis, UnitRegistry};
use qspace::scalars::Rational;

const SYMBOLS: [&str; 5] = ["a", "b", "c", "d", "e"];

fn space(rank: usize) -> QuantitySpace {
    QuantitySpace::new(SYMBOLS[..rank].iter().copied()).unwrap()
}

fn random_rational(rng: &mut StdRng) -> Rational {
    Rational::new(
        rng.random_range(-1_000_000i64..=1_000_000),
        rng.random_range(1i64..=1_000_000),
    )
    .unwrap()
}

fn random_nonzero(rng: &mut StdRng) -> Rational {
    loop {
        let r = random_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

fn random_dims(rng: &mut StdRng, rank: usize) -> DimVector {
    DimVector::new((0..rank).map(|_| rng.random_range(-6i64..=6)).collect())
}

fn random_quantity(rng: &mut StdRng, sp: &QuantitySpace) -> Quantity {
    sp.quantity(random_rational(rng), random_dims(rng, sp.rank()))
        .unwrap()
}

/// Criterion: the scaling-action axioms, the scaled-product collapse,
/// commutativity and non-zero closure hold on 1000 random quantities per
/// law, in under ten seconds.
#[test]
fn axiom_suite() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(101);
    for case in 0..1000 {
        let sp = space(rng.random_range(0..=5));
        let x = random_quantity(&mut rng, &sp);
        let y = random_quantity(&mut rng, &sp);
        let z = random_quantity(&mut rng, &sp);
        let alpha = random_rational(&mut rng);
        let beta = random_rational(&mut rng);

        // Identity scaling and composition of scalings.
        assert_eq!(x.scale(&Rational::one()), x, "case {case}");
        assert_eq!(
            x.scale(&beta).scale(&alpha),
            x.scale(&(&alpha * &beta)),
            "case {case}"
        );
        // Scalars slide through products.
        let xy = x.mul(&y).unwrap();
        assert_eq!(x.scale(&alpha).mul(&y).unwrap(), xy.scale(&alpha));
        assert_eq!(x.mul(&y.scale(&alpha)).unwrap(), xy.scale(&alpha));
        // Scaled factors collapse, and scalings commute.
        assert_eq!(
            x.scale(&alpha).mul(&y.scale(&beta)).unwrap(),
            xy.scale(&(&alpha * &beta))
        );
        assert_eq!(x.scale(&beta).scale(&alpha), x.scale(&alpha).scale(&beta));
        // Commutative monoid with identity.
        assert_eq!(xy, y.mul(&x).unwrap());
        assert_eq!(xy.mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        assert_eq!(x.mul(&sp.one()).unwrap(), x);
        // Inverses of non-zero quantities; non-zero closure.
        if !x.is_zero() {
            assert_eq!(x.mul(&x.inv().unwrap()).unwrap(), sp.one());
        }
        if !x.is_zero() && !y.is_zero() {
            assert!(!xy.is_zero(), "case {case}");
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "axiom suite took {elapsed:?}");
    println!("axiom suite: 1000 cases per law, zero failures, {elapsed:?}");
}

/// Criterion: the five measure laws hold exactly on 1000 random cases each.
#[test]
fn measure_laws() {
    let mut rng = StdRng::seed_from_u64(202);
    for _ in 0..1000 {
        let sp = space(rng.random_range(0..=5));
        assert_eq!(sp.one().measure(), &Rational::one());

        let x = random_quantity(&mut rng, &sp);
        let y = random_quantity(&mut rng, &sp);
        let lambda = random_rational(&mut rng);

        let product = x.mul(&y).unwrap();
        assert_eq!(product.measure(), &(x.measure() * y.measure()));
        let scaled = x.scale(&lambda);
        assert_eq!(scaled.measure(), &(&lambda * x.measure()));

        // Inverse law on a guaranteed non-zero quantity.
        let nz = sp
            .quantity(random_nonzero(&mut rng), random_dims(&mut rng, sp.rank()))
            .unwrap();
        let inverse = nz.inv().unwrap();
        assert_eq!(inverse.measure(), &nz.measure().inv().unwrap());

        // Additive law on a commensurable pair.
        let d = random_dims(&mut rng, sp.rank());
        let p = sp.quantity(random_rational(&mut rng), d.clone()).unwrap();
        let q = sp.quantity(random_rational(&mut rng), d).unwrap();
        let sum = p.add(&q).unwrap();
        assert_eq!(sum.measure(), &(p.measure() + q.measure()));
    }
    println!("measure laws: 1000 cases per law, exact equality");
}

fn run_file(text: &str) -> Vec<Outcome> {
    let statements = parse_file(text).unwrap();
    let Statement::Basis { names, .. } = &statements[0] else {
        panic!("basis first");
    };
    let mut session = Session::new(names).unwrap();
    statements[1..]
        .iter()
        .map(|s| session.apply(s).unwrap())
        .collect()
}

/// Criterion: the worked numeric examples evaluate exactly.
#[test]
fn worked_examples() {
    // 100 cm + 50 cm = 150 cm, directly and through a metre basis.
    let out = run_file("basis cm\ncheck 100 cm + 50 cm\n");
    assert_eq!(out[0], Outcome::Line("OK 150 cm".into()));
    let out =
        run_file("basis m\nunit cm = 1/100 m\ncheck 1 m + 50 cm\nconvert 1 m + 50 cm -> cm\n");
    assert_eq!(out[1], Outcome::Line("OK 3/2 m".into()));
    assert_eq!(out[2], Outcome::Line("150".into()));

    // (1 cm)(2 g) = 2 cm g.
    let out = run_file("basis cm g\ncheck (1 cm) (2 g)\n");
    assert_eq!(out[0], Outcome::Line("OK 2 cm g".into()));

    // 4 foot x 2 yard = 24 square feet, with yard = 3 foot.
    let out = run_file(
        "basis foot\nunit yard = 3 foot\ncheck 4 foot * 2 yard\nconvert 4 foot * 2 yard -> foot^2\n",
    );
    assert_eq!(out[1], Outcome::Line("OK 24 foot^2".into()));
    assert_eq!(out[2], Outcome::Line("24".into()));

    // 9/2 mile per hour for 40 minutes = 3 miles, with hour = 60 min.
    let out = run_file(
        "basis mile min\nunit hour = 60 min\ncheck 9/2 mile/hour * 40 min\nconvert 9/2 mile/hour * 40 min -> mile\n",
    );
    assert_eq!(out[1], Outcome::Line("OK 3 mile".into()));
    assert_eq!(out[2], Outcome::Line("3".into()));

    // statC^2 = cm^3 g / s^2 under a registry realizing the relation with
    // integer exponents over an auxiliary basis symbol.
    let out = run_file(
        "basis b g s\nunit cm = b^2 g\nunit statC = b^3 g^2 s^-1\nassert statC^2 == cm^3 g / s^2\n",
    );
    assert_eq!(out[2], Outcome::Line("PASS".into()));

    println!("worked examples: all exact");
}

const FUZZ_NAMES: [(&str, [i64; 3]); 5] = [
    ("m", [1, 0, 0]),
    ("s", [0, 1, 0]),
    ("kg", [0, 0, 1]),
    ("cm", [1, 0, 0]),
    ("N", [1, -2, 1]),
];

fn fuzz_session() -> Session {
    let statements = parse_file("basis m s kg\nunit cm = 1/100 m\nunit N = kg m s^-2\n").unwrap();
    let Statement::Basis { names, .. } = &statements[0] else {
        panic!()
    };
    let mut session = Session::new(names).unwrap();
    session.load_declarations(&statements[1..]).unwrap();
    session
}

fn gen_expr(rng: &mut StdRng, depth: usize) -> Ast {
    let sp = Span { line: 1, col: 1 };
    if depth == 0 || rng.random_range(0..10) < 2 {
        return if rng.random_range(0..3) == 0 {
            let n = rng.random_range(1i64..=9);
            let d = rng.random_range(1i64..=9);
            Ast::NumberLit(Rational::new(n, d).unwrap(), sp)
        } else {
            let (name, _) = FUZZ_NAMES[rng.random_range(0..FUZZ_NAMES.len())];
            Ast::Name(name.to_string(), sp)
        };
    }
    match rng.random_range(0..10) {
        0 | 1 => {
            let left = gen_expr(rng, depth - 1);
            // Keep half of the sums well-typed by scaling a copy.
            let right = if rng.random_range(0..2) == 0 {
                Ast::Scale(
                    Rational::from_integer(rng.random_range(2i64..=5)),
                    Box::new(left.clone()),
                    sp,
                )
            } else {
                gen_expr(rng, depth - 1)
            };
            if rng.random_range(0..2) == 0 {
                Ast::Add(Box::new(left), Box::new(right), sp)
            } else {
                Ast::Sub(Box::new(left), Box::new(right), sp)
            }
        }
        2 | 3 | 4 => Ast::Mul(
            Box::new(gen_expr(rng, depth - 1)),
            Box::new(gen_expr(rng, depth - 1)),
            sp,
        ),
        5 | 6 => Ast::Div(
            Box::new(gen_expr(rng, depth - 1)),
            Box::new(gen_expr(rng, depth - 1)),
            sp,
        ),
        7 => Ast::Pow(
            Box::new(gen_expr(rng, depth - 1)),
            rng.random_range(-3i64..=3),
            sp,
        ),
        8 => Ast::Scale(
            Rational::new(rng.random_range(1i64..=9), rng.random_range(1i64..=9)).unwrap(),
            Box::new(gen_expr(rng, depth - 1)),
            sp,
        ),
        _ => Ast::Paren(Box::new(gen_expr(rng, depth - 1)), sp),
    }
}

/// Independent exponent tracker: follows dimensions only, rejecting any
/// addition or subtraction of unequal tuples.
fn reference_dims(ast: &Ast) -> Option<Vec<i64>> {
    match ast {
        Ast::NumberLit(..) => Some(vec![0, 0, 0]),
        Ast::Name(name, _) => FUZZ_NAMES
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, d)| d.to_vec()),
        Ast::Scale(_, inner, _) | Ast::Paren(inner, _) => reference_dims(inner),
        Ast::Mul(l, r, _) => {
            let (l, r) = (reference_dims(l)?, reference_dims(r)?);
            Some(l.iter().zip(&r).map(|(a, b)| a + b).collect())
        }
        Ast::Div(l, r, _) => {
            let (l, r) = (reference_dims(l)?, reference_dims(r)?);
            Some(l.iter().zip(&r).map(|(a, b)| a - b).collect())
        }
        Ast::Pow(base, k, _) => {
            let b = reference_dims(base)?;
            Some(b.iter().map(|e| e * k).collect())
        }
        Ast::Add(l, r, _) | Ast::Sub(l, r, _) => {
            let (l, r) = (reference_dims(l)?, reference_dims(r)?);
            if l == r {
                Some(l)
            } else {
                None
            }
        }
    }
}

/// Criterion: over ten thousand generated expressions, the evaluator
/// accepts exactly the expressions the independent exponent tracker
/// accepts; division-by-zero rejections are not homogeneity verdicts.
#[test]
fn homogeneity_fuzz() {
    use qcalc::eval::EvalErrorKind;
    let session = fuzz_session();
    let mut rng = StdRng::seed_from_u64(303);
    let (mut well_typed, mut ill_typed) = (0usize, 0usize);
    for case in 0..10_000 {
        let ast = gen_expr(&mut rng, 4);
        let reference = reference_dims(&ast);
        match session.eval_expr(&ast) {
            Ok(value) => {
                well_typed += 1;
                let expected =
                    reference.unwrap_or_else(|| panic!("case {case}: false accept: {ast:?}"));
                assert_eq!(value.dims().exponents(), &expected[..], "case {case}");
            }
            Err(e) => match e.kind {
                EvalErrorKind::DimensionMismatch { .. } => {
                    ill_typed += 1;
                    assert!(reference.is_none(), "case {case}: false reject: {ast:?}");
                }
                EvalErrorKind::NotInvertible => {}
                other => panic!("case {case}: unexpected error {other:?}"),
            },
        }
    }
    assert!(well_typed >= 1000, "only {well_typed} well-typed cases");
    assert!(ill_typed >= 1000, "only {ill_typed} ill-typed cases");
    println!(
        "homogeneity fuzz: 10000 expressions, {well_typed} accepted, {ill_typed} rejected, zero disagreements"
    );
}

/// Criterion: 100 random unimodular basis changes with entries in [-3, 3]
/// are isomorphisms, leave dimensionless measures alone, and compose with
/// their inverses to the identity.
#[test]
fn basis_change_isomorphisms() {
    let mut rng = StdRng::seed_from_u64(404);
    let mut accepted = 0usize;
    while accepted < 100 {
        let rank = rng.random_range(1usize..=3);
        let sp = space(rank);
        let rows: Vec<Vec<i64>> = (0..rank)
            .map(|_| (0..rank).map(|_| rng.random_range(-3i64..=3)).collect())
            .collect();
        let det = qspace::dimensions::IntMatrix::from_rows(&rows)
            .determinant()
            .unwrap();
        if det.abs() != 1 {
            continue;
        }
        accepted += 1;
        let defs: Vec<(String, Quantity)> = rows
            .iter()
            .enumerate()
            .map(|(j, row)| {
                let q = sp
                    .quantity(random_nonzero(&mut rng), DimVector::new(row.clone()))
                    .unwrap();
                (format!("n{j}"), q)
            })
            .collect();
        let change = change_basis(&sp, &defs).unwrap();
        let inverse = change.inverse().unwrap();

        for _ in 0..5 {
            let x = random_quantity(&mut rng, &sp);
            let y = random_quantity(&mut rng, &sp);
            let lambda = random_rational(&mut rng);
            let rx = change.rebase(&x).unwrap();
            let ry = change.rebase(&y).unwrap();
            assert_eq!(
                change.rebase(&x.mul(&y).unwrap()).unwrap(),
                rx.mul(&ry).unwrap()
            );
            assert_eq!(change.rebase(&x.scale(&lambda)).unwrap(), rx.scale(&lambda));
            assert_eq!(inverse.rebase(&rx).unwrap(), x);

            let dimensionless = sp
                .quantity(random_rational(&mut rng), DimVector::zero(rank))
                .unwrap();
            assert_eq!(
                change.rebase(&dimensionless).unwrap().measure(),
                dimensionless.measure()
            );
        }
        assert_eq!(change.rebase(&sp.one()).unwrap(), change.target().one());
    }
    println!("basis changes: 100 random unimodular changes verified");
}

/// Smith-form oracle on a generator matrix: d_1 * ... * d_k is the gcd of
/// all k x k minors.
fn minor_gcd_diagonal(rows: &[Vec<i64>], cols: usize) -> Vec<i64> {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    fn det(idx_r: &[usize], idx_c: &[usize], rows: &[Vec<i64>]) -> i64 {
        let k = idx_r.len();
        if k == 1 {
            return rows[idx_r[0]][idx_c[0]];
        }
        let mut acc = 0i64;
        for (pos, &c) in idx_c.iter().enumerate() {
            let rest: Vec<usize> = idx_c.iter().copied().filter(|&cc| cc != c).collect();
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            acc += sign * rows[idx_r[0]][c] * det(&idx_r[1..], &rest, rows);
        }
        acc
    }
    fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in 0..n {
            for rest in combos(first, k - 1) {
                let mut v = rest;
                v.push(first);
                v.reverse();
                out.push(v);
            }
        }
        out
    }
    let r = rows.len();
    let mut prev = 1i64;
    let mut diag = Vec::new();
    for k in 1..=r.min(cols) {
        let mut g = 0;
        for ri in combos(r, k) {
            for ci in combos(cols, k) {
                g = gcd(g, det(&ri, &ci, rows));
            }
        }
        if g == 0 {
            diag.push(0);
        } else {
            diag.push(g / prev);
            prev = g;
        }
    }
    diag
}

/// Criterion: natural-unit quotients have the predicted ranks, send their
/// set units to the dimensionless one, and reject unsaturated generators
/// with the right invariant factors, all agreeing with the minor-gcd
/// Smith oracle.
#[test]
fn natural_unit_quotients() {
    let sp = QuantitySpace::new(["m", "s", "kg"]).unwrap();
    let c = sp
        .quantity("299792458".parse().unwrap(), DimVector::new(vec![1, -1, 0]))
        .unwrap();
    let hbar = sp
        .quantity(
            "1054571817/10000000000000000000000000000000000000000000"
                .parse()
                .unwrap(),
            DimVector::new(vec![2, -1, 1]),
        )
        .unwrap();
    let reg = UnitRegistry::new(sp.clone())
        .register("c", c.clone())
        .unwrap()
        .register("hbar", hbar.clone())
        .unwrap();

    // Oracle-side ranks from the minor-gcd diagonal.
    let diag_c = minor_gcd_diagonal(&[vec![1, -1, 0]], 3);
    assert_eq!(diag_c, vec![1]);
    let diag_ch = minor_gcd_diagonal(&[vec![1, -1, 0], vec![2, -1, 1]], 3);
    assert_eq!(diag_ch, vec![1, 1]);
    let diag_t = minor_gcd_diagonal(&[vec![2, -2, 0]], 3);
    assert_eq!(diag_t, vec![2]);

    let by_c = build_quotient(&reg, &["c"]).unwrap();
    assert_eq!(by_c.rank(), 3 - diag_c.len());
    assert_eq!(by_c.project(&c).unwrap(), by_c.space().one());

    let by_ch = build_quotient(&reg, &["c", "hbar"]).unwrap();
    assert_eq!(by_ch.rank(), 3 - diag_ch.len());
    assert_eq!(by_ch.project(&c).unwrap(), by_ch.space().one());
    assert_eq!(by_ch.project(&hbar).unwrap(), by_ch.space().one());

    let torsion_unit = sp
        .quantity(Rational::one(), DimVector::new(vec![2, -2, 0]))
        .unwrap();
    let reg = reg.register("u", torsion_unit).unwrap();
    let expected: Vec<i64> = diag_t.into_iter().filter(|&d| d > 1).collect();
    assert_eq!(
        build_quotient(&reg, &["u"]).err(),
        Some(QuotientError::TorsionQuotient(expected))
    );

    // Projection is a homomorphism on random quantities.
    let mut rng = StdRng::seed_from_u64(505);
    for _ in 0..1000 {
        let x = random_quantity_over(&mut rng, &sp);
        let y = random_quantity_over(&mut rng, &sp);
        let lambda = random_rational(&mut rng);
        let px = by_ch.project(&x).unwrap();
        let py = by_ch.project(&y).unwrap();
        assert_eq!(
            by_ch.project(&x.mul(&y).unwrap()).unwrap(),
            px.mul(&py).unwrap()
        );
        assert_eq!(by_ch.project(&x.scale(&lambda)).unwrap(), px.scale(&lambda));
    }
    println!("natural units: ranks 2 and 1, projections to 1, torsion [2] rejected");
}

fn random_quantity_over(rng: &mut StdRng, sp: &QuantitySpace) -> Quantity {
    sp.quantity(random_rational(rng), random_dims(rng, sp.rank()))
        .unwrap()
}

/// Criterion: the whole finite-model inventory passes every exhaustive
/// check, quotient maps are surjective homomorphisms, tensor products
/// balance scalars and associate, and corrupted tables are caught, all in
/// under a minute.
#[test]
fn finite_model_oracle() {
    let start = Instant::now();
    let inventory = standard_inventory();

    for (name, model) in &inventory {
        let report = verify_model(name, model);
        assert!(report.passed(), "{name} failed:\n{report}");

        // Partition oracle: grouping by the zero element 0 * x.
        let part = orbit_partition(model);
        for x in 0..model.carrier() {
            for y in 0..model.carrier() {
                assert_eq!(
                    part.class_of[x] == part.class_of[y],
                    model.scale(0, x) == model.scale(0, y),
                    "{name}: partition disagrees at ({x},{y})"
                );
            }
        }
        // Ring-monoids over C_k have exactly k classes, one per monoid
        // element, each of ring size.
        let k = model.carrier() / model.modulus() as usize;
        assert_eq!(part.classes.len(), k, "{name}");
        assert!(part
            .classes
            .iter()
            .all(|c| c.len() == model.modulus() as usize));

        // Quotient maps are surjective homomorphisms.
        let tilde = congruence_quotient(model, CongruenceKind::Commensurability).unwrap();
        assert!(quotient_homomorphism_witness(model, &tilde).is_none());
        let identity_orbit = model.orbit(model.identity());
        let scaled_one =
            congruence_quotient(model, CongruenceKind::ScalableSubmonoid(&identity_orbit)).unwrap();
        assert!(quotient_homomorphism_witness(model, &scaled_one).is_none());
        assert_eq!(tilde.class_of, scaled_one.class_of, "{name}");
        let trivial_sub =
            congruence_quotient(model, CongruenceKind::Submonoid(&[model.identity()])).unwrap();
        assert!(quotient_homomorphism_witness(model, &trivial_sub).is_none());
        assert_eq!(trivial_sub.model.carrier(), model.carrier());

        // Negative controls: a corrupted identity row and a corrupted
        // unit-scaling entry must each produce at least one violation.
        let target = (model.identity() + 1) % model.carrier();
        let wrong = (target + 1) % model.carrier();
        let bad_mul = model.with_mul_entry(model.identity(), target, wrong);
        assert!(
            check_axioms(&bad_mul).total_violations() >= 1,
            "{name}: corrupted multiplication table passed"
        );
        let bad_scale = model.with_scale_entry(1, target, wrong);
        assert!(
            check_axioms(&bad_scale).total_violations() >= 1,
            "{name}: corrupted scaling table passed"
        );
    }

    // Strong commensurability implies commensurability everywhere (part of
    // verify_model); the converse fails, witnessed in the direct square of
    // the two-element model where (1,0) ~ (0,1) share no scaling orbit.
    let base =
        FiniteScalableMonoid::ring_monoid(2, &qspace::finite::FiniteMonoid::cyclic(1)).unwrap();
    let square = qspace::finite::direct_product(&base, &base).unwrap();
    let part = orbit_partition(&square);
    let (x, y) = (2usize, 1usize);
    assert_eq!(part.class_of[x], part.class_of[y]);
    assert!(!part.strong_pairs.contains(&(y, x)) && !part.strong_pairs.contains(&(x, y)));

    // Tensor balance law on pairs with carriers <= 4 per factor.
    let small: Vec<&FiniteScalableMonoid> = inventory
        .iter()
        .filter(|(_, m)| m.carrier() <= 4)
        .map(|(_, m)| m)
        .collect();
    for x in &small {
        for y in &small {
            if x.modulus() != y.modulus() {
                continue;
            }
            let t = tensor_product(x, y).unwrap();
            assert!(check_axioms(&t.model).passed());
            let cy = y.carrier();
            for a in 0..x.carrier() {
                for b in 0..cy {
                    for lambda in 0..x.modulus() {
                        assert_eq!(
                            t.class_of[x.scale(lambda, a) * cy + b],
                            t.class_of[a * cy + y.scale(lambda, b)]
                        );
                    }
                }
            }
        }
    }
    // Associativity isomorphisms on triples of small factors.
    for x in &small {
        for y in &small {
            for z in &small {
                if x.modulus() != y.modulus() || y.modulus() != z.modulus() {
                    continue;
                }
                verify_tensor_associativity(x, y, z).unwrap();
            }
        }
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "oracle took {elapsed:?}");
    println!(
        "finite models: {} models verified, negative controls caught, {elapsed:?}",
        inventory.len()
    );
}

/// Criterion: rendering then parsing is the identity on 1000 random
/// quantities.
#[test]
fn laurent_roundtrip() {
    let mut rng = StdRng::seed_from_u64(606);
    for case in 0..1000 {
        let rank = rng.random_range(0usize..=5);
        let sp = space(rank);
        let q = random_quantity(&mut rng, &sp);
        let rendered = q.laurent_form();
        let ast = parse_expression(&rendered)
            .unwrap_or_else(|e| panic!("case {case}: {rendered:?}: {e}"));
        let names: Vec<String> = SYMBOLS[..rank].iter().map(|s| s.to_string()).collect();
        let session = Session::new(&names).unwrap();
        let back = session.eval_expr(&ast).unwrap();
        assert_eq!(back, q, "case {case}: {rendered:?}");
    }
    println!("laurent roundtrip: 1000 quantities, render-parse identity");
}

/// Criterion: the pendulum variables admit exactly one dimensionless
/// group, the velocity-length-time triple yields v t / l up to sign, and
/// every returned group is dimensionless.
#[test]
fn buckingham_pi() {
    let dv = |v: &[i64]| DimVector::new(v.to_vec());

    // Pendulum over (L, T): l, g, t.
    let vars = [dv(&[1, 0]), dv(&[1, -2]), dv(&[0, 1])];
    let groups = pi_groups(&vars).unwrap();
    assert_eq!(groups.len(), 1);
    assert_eq!(groups[0], vec![1, -1, -2]);

    // Single variable: nothing to combine.
    assert!(pi_groups(&[dv(&[1, 0])]).unwrap().is_empty());

    // v, l, t: the generator is v t / l up to sign.
    let groups = pi_groups(&[dv(&[1, -1]), dv(&[1, 0]), dv(&[0, 1])]).unwrap();
    assert_eq!(groups, vec![vec![1, -1, 1]]);

    // Every output combines to the zero vector, on random variable sets.
    let mut rng = StdRng::seed_from_u64(707);
    for _ in 0..200 {
        let rank = rng.random_range(1usize..=4);
        let count = rng.random_range(1usize..=5);
        let vars: Vec<DimVector> = (0..count)
            .map(|_| DimVector::new((0..rank).map(|_| rng.random_range(-3i64..=3)).collect()))
            .collect();
        for group in pi_groups(&vars).unwrap() {
            let mut total = DimVector::zero(rank);
            for (v, &e) in vars.iter().zip(&group) {
                total = total.mul(&v.pow(e).unwrap()).unwrap();
            }
            assert!(total.is_zero());
            let lead = group.iter().find(|&&e| e != 0);
            assert!(
                lead.is_none_or(|&e| e > 0),
                "not sign-normalized: {group:?}"
            );
        }
    }
    println!("buckingham pi: pendulum and v-l-t groups exact, outputs dimensionless");
}
