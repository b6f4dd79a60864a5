//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use algser::algebra::rat::{frac, int, pow};
use algser::algebra::{BivarPoly, Rat, SupportShape, TruncatedSeries, Valuation};
use algser::expansion::{expand, Method};
use algser::fixtures::{
    liftable_instances, random_nonzero_rat, random_rat, random_series, reference_poly,
    reference_seed, rng, three_column_instance, three_column_shape, Instance,
};
use algser::flajolet_soria::{fs_expand, Budget, ReducedHenselEq, Variant};
use algser::henselization::{henselize, omega0_closed, order_sequence, separate, HenselOutcome};
use algser::io::{self, PolyFile, SeriesFile, ShapeFile};
use algser::newton_oracle::newton_lift;
use algser::wilczynski::{
    build_slab, certify, reconstruct, slab_depth, wilczynski_minor, Implicitization, MinorIndex,
    DEFAULT_MINOR_BUDGET,
};
use algser_cli::{run, EXIT_OK};
use serde_json::Value;
use tempfile::TempDir;

const AGREEMENT_SEED: u64 = 20_240_917;
const AGREEMENT_INSTANCES: usize = 30;
const REFERENCE_LIMIT: Duration = Duration::from_secs(1);
const RECONSTRUCTION_LIMIT: Duration = Duration::from_secs(1);
const AGREEMENT_LIMIT: Duration = Duration::from_secs(60);
const MINOR_POINTS: usize = 20;
const SHAPE_INSTANCES: usize = 25;
const NEGATIVE_CONTROLS: usize = 100;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ints(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&n| int(n)).collect()
}

fn text(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(|r| r.to_string()).collect();
    format!("({})", parts.join(", "))
}

struct Cli {
    dir: TempDir,
    files: usize,
}

impl Cli {
    fn new() -> Self {
        Cli {
            dir: TempDir::new().expect("temp dir"),
            files: 0,
        }
    }

    fn file(&mut self, body: &str) -> PathBuf {
        self.files += 1;
        let p = self.dir.path().join(format!("f{}.json", self.files));
        fs::write(&p, body).expect("write temp file");
        p
    }

    fn call(&self, args: &[&str]) -> (i32, Value) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["algser"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        let v = serde_json::from_slice(&out).unwrap_or(Value::Null);
        (code, v)
    }
}

fn rats(v: &Value) -> Result<Vec<Rat>, String> {
    let strings: Vec<String> = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
    io::parse_rats(&strings).map_err(|e| e.to_string())
}

fn criterion_1() -> Check {
    let p = reference_poly();
    let c = TruncatedSeries::from_tail(&reference_seed());
    let sep = separate(&p, &c).map_err(|e| e.to_string())?;
    let trace = order_sequence(&p, &c, 1).map_err(|e| e.to_string())?;
    let omega = omega0_closed(&p, &c, sep.k0, sep.i_k0).map_err(|e| e.to_string())?;
    ensure(sep.k0 == 0, || format!("k0 = {}", sep.k0))?;
    ensure(trace.order(0) == Some(2), || {
        format!("i_0 = {:?}", trace.order(0))
    })?;
    ensure(trace.order(1) == Some(3), || {
        format!("i_1 = {:?}", trace.order(1))
    })?;
    ensure(omega == int(2) && sep.omega0() == int(2), || {
        format!("omega0 = {omega}")
    })?;

    let want = [int(1), int(1), int(0), int(-1), frac(-1, 2)];
    let mut firsts = Vec::new();
    for m in Method::ALL {
        let mut y = reference_seed();
        y.extend(
            expand(&p, &reference_seed(), 9, m, &mut Budget::default())
                .map_err(|e| e.to_string())?,
        );
        ensure(y.len() == 10 && y[..5] == want[..], || {
            format!("{m}: {}", text(&y))
        })?;
        firsts.push(y);
    }
    ensure(firsts.windows(2).all(|w| w[0] == w[1]), || {
        "methods disagree past c_5".into()
    })?;
    let lifted = newton_lift(&p, &reference_seed(), 10).map_err(|e| e.to_string())?;
    ensure(lifted.residual_ord > 10, || {
        "oracle residual too low".into()
    })?;
    Ok(format!(
        "k0=0 i0=2 i1=3 omega0=2; c_1..c_10 = {}",
        text(&firsts[0])
    ))
}

fn criterion_2() -> Check {
    let mut cli = Cli::new();
    let c = newton_lift(&reference_poly(), &reference_seed(), 16)
        .map_err(|e| e.to_string())?
        .series;
    let series = cli.file(&io::series_json(c.tail()));
    let shape = cli.file(&io::to_json(&ShapeFile::from_shape(&three_column_shape())));
    let (code, v) = cli.call(&[
        "implicitize",
        "--series",
        series.to_str().unwrap(),
        "--dx",
        "2",
        "--dy",
        "2",
        "--shape",
        shape.to_str().unwrap(),
    ]);
    ensure(code == EXIT_OK, || {
        format!("implicitize exited {code}: {v}")
    })?;
    let file: PolyFile = serde_json::from_value(v).map_err(|e| e.to_string())?;
    let got = file.to_poly().map_err(|e| e.to_string())?;

    let want = BivarPoly::from_int_terms(&[(2, 0, -1), (2, 1, -2), (0, 2, 1), (2, 2, 1)]);
    ensure(got == want, || format!("recovered {got}"))?;
    // c_1 [-c_1^4 x^2 - 2 c_1^2 c_2 x^2 y + c_1^2 y^2 + (c_2^2 - 2 c_1 c_3) x^2 y^2]
    let (c1, c2, c3) = (c.coeff(1), c.coeff(2), c.coeff(3));
    let formula = BivarPoly::from_terms([
        (2, 0, -pow(c1, 5)),
        (2, 1, -int(2) * pow(c1, 3) * c2),
        (0, 2, pow(c1, 3)),
        (2, 2, c1 * (c2 * c2 - int(2) * c1 * c3)),
    ]);
    ensure(formula.normalized() == got, || {
        format!("formula gives {formula}")
    })?;

    let poly = cli.file(&io::poly_json(&got));
    let (code, v) = cli.call(&[
        "certify",
        "--poly",
        poly.to_str().unwrap(),
        "--series",
        series.to_str().unwrap(),
        "--dx",
        "2",
        "--dy",
        "2",
    ]);
    ensure(
        code == EXIT_OK && v["certified"] == true && v["tau"] == 8,
        || format!("certify exited {code}: {v}"),
    )?;
    Ok(format!("recovered {got}; certified at tau = 8"))
}

fn printed_minor(rows: [usize; 3], c: &[Rat]) -> Rat {
    let (c1, c2, c3, c4, c5) = (&c[0], &c[1], &c[2], &c[3], &c[4]);
    let n = |v: i64| int(v);
    match rows {
        [2, 3, 4] => -n(2) * c1 * c1 * (pow(c2, 3) - n(2) * c3 * c1 * c2 + c1 * c1 * c4),
        [2, 3, 5] => -c1.clone() * (pow(c2, 4) - n(3) * c1 * c1 * c3 * c3 + n(2) * pow(c1, 3) * c5),
        [2, 4, 5] => {
            -n(2)
                * c1
                * c1
                * (-c4 * c2 * c2 - n(2) * c1 * c4 * c3 + c2 * c3 * c3 + n(2) * c1 * c2 * c5)
        }
        [3, 4, 5] => {
            n(8) * c2 * c1 * c1 * c4 * c3 + pow(c2, 4) * c3
                - n(2) * c2 * c2 * c3 * c3 * c1
                - n(4) * c1 * c1 * c2 * c2 * c5
                - n(3) * c1 * c1 * pow(c3, 3)
                + n(2) * c3 * pow(c1, 3) * c5
                - n(2) * pow(c1, 3) * c4 * c4
        }
        _ => unreachable!(),
    }
}

fn criterion_3() -> Check {
    let shape = three_column_shape();
    let mut r = rng(3);
    let picks = [[2, 3, 4], [2, 3, 5], [2, 4, 5], [3, 4, 5]];
    let mut evaluated = 0;
    for _ in 0..MINOR_POINTS {
        let mut c = vec![random_nonzero_rat(&mut r)];
        c.extend((0..5).map(|_| random_rat(&mut r)));
        let slab =
            build_slab(&shape, &TruncatedSeries::from_tail(&c), 5).map_err(|e| e.to_string())?;
        for rows in picks {
            let idx =
                MinorIndex::new(rows.to_vec(), shape.f().to_vec()).map_err(|e| e.to_string())?;
            let got = wilczynski_minor(&slab, &idx).map_err(|e| e.to_string())?;
            let want = printed_minor(rows, &c);
            ensure(got == want, || {
                format!("rows {rows:?} at {}: {got} vs {want}", text(&c))
            })?;
            evaluated += 1;
        }
    }

    let mut r = rng(33);
    for _ in 0..SHAPE_INSTANCES {
        let (p, c1) = three_column_instance(&mut r);
        let y = newton_lift(&p, &[c1], 5).map_err(|e| e.to_string())?.series;
        let (c1, c2, c3) = (y.coeff(1), y.coeff(2), y.coeff(3));
        let c4 = -(c2 * (c2 * c2 - int(2) * c1 * c3)) / (c1 * c1);
        let c5 = -(pow(c2, 4) - int(3) * c1 * c1 * c3 * c3) / (int(2) * pow(c1, 3));
        ensure(y.coeff(4) == &c4 && y.coeff(5) == &c5, || {
            format!(
                "{p}: c_4, c_5 = {}, {} vs {c4}, {c5}",
                y.coeff(4),
                y.coeff(5)
            )
        })?;
    }
    Ok(format!(
        "{evaluated} minor evaluations exact; c_4, c_5 relations hold on {SHAPE_INSTANCES} instances"
    ))
}

fn agreement_instances() -> Vec<Instance> {
    liftable_instances(AGREEMENT_SEED, AGREEMENT_INSTANCES)
}

fn criterion_4() -> Check {
    let mut cli = Cli::new();
    let instances = agreement_instances();
    for (n, inst) in instances.iter().enumerate() {
        let poly = cli.file(&io::poly_json(&inst.poly));
        let seed = cli.file(&io::to_json(&SeriesFile::from_coeffs(&inst.seed)));
        let (code, v) = cli.call(&[
            "expand",
            "--poly",
            poly.to_str().unwrap(),
            "--seed",
            seed.to_str().unwrap(),
            "--count",
            "6",
            "--method",
            "all",
        ]);
        ensure(code == EXIT_OK && v["agree"] == true, || {
            format!("instance {n} ({}) exited {code}: {v}", inst.poly)
        })?;
        let newton = rats(&v["methods"]["newton"])?;
        for m in ["closed", "fs"] {
            ensure(rats(&v["methods"][m])? == newton, || {
                format!("instance {n}: {m} differs")
            })?;
        }
        ensure(newton.len() == 6, || {
            format!("instance {n}: {} coefficients", newton.len())
        })?;
    }
    let close = instances
        .iter()
        .filter(|i| i.family == "close-branch")
        .count();
    Ok(format!(
        "{} instances ({close} with k0 = 1) agree for p = 1..6",
        instances.len()
    ))
}

fn criterion_5() -> Check {
    let mut tested = 0;
    for (n, inst) in agreement_instances().iter().enumerate() {
        let bound = 2 * (inst.dx() * inst.dy()) as usize;
        let t = 16;
        let y = newton_lift(&inst.poly, &inst.seed, t)
            .map_err(|e| e.to_string())?
            .series;
        let dy = inst
            .poly
            .derivative_y()
            .eval_at_series(&y, t)
            .map_err(|e| e.to_string())?;
        let e = match dy.valuation() {
            Valuation::Exact(e) => e,
            v => return Err(format!("instance {n}: derivative order {v}")),
        };
        ensure(e <= bound, || {
            format!("instance {n}: ord dP/dy = {e} > {bound}")
        })?;
        let sep = separate(&inst.poly, &y).map_err(|err| err.to_string())?;
        ensure(sep.k0 <= bound + 1, || {
            format!("instance {n}: k0 = {} > {}", sep.k0, bound + 1)
        })?;
        let trace = order_sequence(&inst.poly, &y, t - 1).map_err(|err| err.to_string())?;
        ensure(trace.failure.is_none(), || {
            format!("instance {n}: order sequence fails")
        })?;
        for w in trace.entries.windows(2).filter(|w| w[0].0 >= sep.k0) {
            ensure(w[1].1 == w[0].1 + 1, || {
                format!(
                    "instance {n}: i_{} = {}, i_{} = {}",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )
            })?;
            tested += 1;
        }
    }
    Ok(format!("{tested} increments checked, zero violations"))
}

fn criterion_6() -> Check {
    let catalan = ints(&[1, 1, 2, 5, 14, 42]);
    let q = BivarPoly::from_int_terms(&[(1, 0, 1), (0, 2, 1)]);
    let eq = ReducedHenselEq::new(q).map_err(|e| e.to_string())?;
    let full =
        fs_expand(&eq, 6, Variant::Full, &mut Budget::default()).map_err(|e| e.to_string())?;
    ensure(full.tail() == catalan.as_slice(), || {
        format!("full sum gives {}", text(full.tail()))
    })?;

    // The truncated sum needs Q(0, y) = 0; x + y^2 has a y^2 term, so it is
    // applied to the equation for the tail after c_1 x + c_2 x^2.
    let p = BivarPoly::from_int_terms(&[(0, 1, 1), (1, 0, -1), (0, 2, -1)]);
    let prefix = full.tail()[..2].to_vec();
    let HenselOutcome::Equation(form) =
        henselize(&p, &TruncatedSeries::from_tail(&prefix), 1).map_err(|e| e.to_string())?
    else {
        return Err("unexpected polynomial root".into());
    };
    let mut truncated = prefix;
    let tail = fs_expand(&form.eq, 4, Variant::Restricted, &mut Budget::default())
        .map_err(|e| e.to_string())?;
    truncated.extend_from_slice(tail.tail());
    ensure(truncated == catalan, || {
        format!("truncated sum gives {}", text(&truncated))
    })?;
    let full_tail =
        fs_expand(&form.eq, 4, Variant::Full, &mut Budget::default()).map_err(|e| e.to_string())?;
    ensure(full_tail == tail, || {
        "variants differ on the reduced equation".into()
    })?;
    Ok(format!("c_1..c_6 = {} from both sums", text(&catalan)))
}

fn criterion_7() -> Check {
    let mut checked = 0;
    for (n, inst) in agreement_instances().iter().enumerate() {
        let s = inst.seed.len();
        ensure(inst.seed.iter().all(|c| c.is_integer()), || {
            format!("instance {n}: seed not integral")
        })?;
        let y = newton_lift(&inst.poly, &inst.seed, s + 6)
            .map_err(|e| e.to_string())?
            .series;
        let omega = separate(&inst.poly, &y)
            .map_err(|e| e.to_string())?
            .omega0();
        for p in 1..=6 {
            let scaled = pow(&omega, p) * y.coeff(s + p);
            ensure(scaled.is_integer(), || {
                format!("instance {n}: omega0^{p} c_{} = {scaled}", s + p)
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} scaled coefficients integral, zero violations"
    ))
}

fn criterion_8() -> Check {
    let shape = SupportShape::full(2, 2);
    let tau = slab_depth(2, 2);
    let mut r = rng(8);
    let (mut rejected, mut found, mut uncertified) = (0, 0, 0);
    for n in 0..NEGATIVE_CONTROLS {
        let c = TruncatedSeries::from_tail(&random_series(&mut r, 2 * tau));
        match reconstruct(&shape, &c, 2, 2, DEFAULT_MINOR_BUDGET).map_err(|e| e.to_string())? {
            Implicitization::NotAlgebraic { .. } => rejected += 1,
            Implicitization::Uncertified { .. } => uncertified += 1,
            Implicitization::Found { poly, .. } => {
                ensure(certify(&poly, &c, 2, 2).map_err(|e| e.to_string())?, || {
                    format!("series {n}: uncertified polynomial returned")
                })?;
                let lifted =
                    newton_lift(&poly, &c.tail()[..tau], 2 * tau + 1).map_err(|e| e.to_string())?;
                let ord = poly
                    .eval_at_series(&lifted.series, 2 * tau + 1)
                    .map_err(|e| e.to_string())?
                    .valuation();
                ensure(ord.exceeds(2 * tau), || {
                    format!("series {n}: residual order {ord}")
                })?;
                found += 1;
            }
        }
    }
    Ok(format!(
        "{rejected} not algebraic at bounds, {found} certified, {uncertified} withheld as uncertified"
    ))
}

fn main() -> ExitCode {
    type Criterion = (usize, &'static str, fn() -> Check, Option<Duration>);
    let criteria: [Criterion; 8] = [
        (
            1,
            "reference root separation and expansion",
            criterion_1,
            Some(REFERENCE_LIMIT),
        ),
        (
            2,
            "reconstruction on the three-column shape",
            criterion_2,
            Some(RECONSTRUCTION_LIMIT),
        ),
        (3, "symbolic order-3 minors", criterion_3, None),
        (
            4,
            "triple agreement of expansion methods",
            criterion_4,
            Some(AGREEMENT_LIMIT),
        ),
        (5, "order and separation bounds", criterion_5, None),
        (
            6,
            "Catalan equation, full and truncated sums",
            criterion_6,
            None,
        ),
        (7, "denominators are powers of omega0", criterion_7, None),
        (8, "negative controls", criterion_8, None),
    ];
    let mut failed = 0;
    for (n, name, f, limit) in criteria {
        let start = Instant::now();
        let mut result = f();
        let took = start.elapsed();
        if let (Ok(_), Some(limit)) = (&result, limit) {
            if took > limit {
                result = Err(format!("took {took:.2?}, limit {limit:.2?}"));
            }
        }
        match result {
            Ok(detail) => println!("PASS [{n}] {name}: {detail} ({took:.2?})"),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{n}] {name}: {detail} ({took:.2?})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
