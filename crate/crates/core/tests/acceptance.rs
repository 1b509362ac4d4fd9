//! Acceptance runner: checks each numbered criterion and prints one
//! PASS/FAIL line per criterion. Exits non-zero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use common::{
    brute_force, naive_saturate, random_feo_graph, random_query, random_roundtrip_graph,
    random_store, raw_set, rng,
};
use feo::inference::{feo_ruleset, saturate};
use feo::kb;
use feo::query::{evaluate, parse_query};
use feo::rdf::Graph;
use feo::turtle::{parse_turtle, serialize_ntriples};

const RANDOM_GRAPHS: u64 = 200;
const RANDOM_QUERIES: u64 = 200;
const ROUND_TRIP_GRAPHS: u64 = 100;

type Check = fn() -> String;

const FEO: &str = "https://purl.org/heals/feo#";

fn asset(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("assets")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn feo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_feo"))
        .args(args)
        .output()
        .expect("run feo")
}

fn ok_stdout(out: &Output) -> String {
    assert_eq!(
        out.status.code(),
        Some(0),
        "feo failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn expand(cell: &str) -> String {
    match cell.strip_prefix("feo:") {
        Some(local) => format!("{FEO}{local}"),
        None => cell.to_string(),
    }
}

/// Runs a canonical query through the binary and compares the expanded
/// rows with `expected` (full IRIs, empty string for unbound).
fn canonical_query(name: &str, expected: &[&[&str]]) -> String {
    let start = Instant::now();
    let out = feo(&[
        "query",
        "--data",
        &asset("schema.ttl"),
        &asset("demo.ttl"),
        &asset(&format!("{name}.rq")),
    ]);
    let elapsed = start.elapsed();
    let text = ok_stdout(&out);
    assert_eq!(
        text,
        std::fs::read_to_string(asset(&format!("expected/{name}.tsv"))).unwrap(),
        "output differs from expected/{name}.tsv"
    );
    let mut rows: Vec<Vec<String>> = text
        .lines()
        .skip(1)
        .map(|l| l.split('\t').map(expand).collect())
        .collect();
    rows.sort();
    let mut want: Vec<Vec<String>> = expected
        .iter()
        .map(|r| r.iter().map(|c| c.to_string()).collect())
        .collect();
    want.sort();
    assert_eq!(rows, want);
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    format!("{} row(s) in {} ms", rows.len(), elapsed.as_millis())
}

fn f(local: &str) -> String {
    format!("{FEO}{local}")
}

fn criterion_1() -> String {
    canonical_query("contextual", &[&[&f("Autumn"), &f("SeasonCharacteristic")]])
}

fn criterion_2() -> String {
    canonical_query(
        "contrastive",
        &[&[
            &f("SeasonCharacteristic"),
            &f("Autumn"),
            &f("AllergicFoodCharacteristic"),
            &f("Broccoli"),
        ]],
    )
}

fn criterion_3() -> String {
    canonical_query(
        "counterfactual",
        &[
            &[&f("recommends"), &f("Spinach"), &f("SpinachFrittata")],
            &[&f("forbids"), &f("Sushi"), ""],
        ],
    )
}

fn criterion_4() -> String {
    let cases: [(&[&str], &[&str]); 3] = [
        (
            &[
                "ask",
                "--type",
                "contextual",
                "--primary",
                "feo:CauliflowerPotatoCurry",
            ],
            &["available in the current season"],
        ),
        (
            &[
                "ask",
                "--type",
                "contrastive",
                "--primary",
                "feo:ButternutSquashSoup",
                "--secondary",
                "feo:BroccoliCheddarSoup",
            ],
            &["you are allergic to"],
        ),
        (
            &[
                "ask",
                "--type",
                "counterfactual",
                "--hypothetical",
                "feo:Pregnancy",
            ],
            &["forbidden from eating", "Spinach Frittata"],
        ),
    ];
    for (args, phrases) in cases {
        let text = ok_stdout(&feo(args));
        for phrase in phrases {
            assert!(text.contains(phrase), "{phrase:?} missing from {text:?}");
        }
    }
    "all key phrases present".into()
}

fn random_graphs() -> impl Iterator<Item = Graph> {
    (0..RANDOM_GRAPHS).map(|seed| random_feo_graph(&mut rng(seed), 50))
}

fn criterion_5() -> String {
    let start = Instant::now();
    let mut derived = 0;
    for (seed, g) in random_graphs().enumerate() {
        let sat = saturate(&g, &feo_ruleset()).unwrap();
        let oracle = naive_saturate(&g);
        assert_eq!(raw_set(&sat), oracle, "graph seed {seed}");
        derived += oracle.len() - g.len();
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    format!(
        "{RANDOM_GRAPHS} graphs, {derived} derived triples, {} ms",
        elapsed.as_millis()
    )
}

fn criterion_6() -> String {
    let start = Instant::now();
    let (mut solutions, mut non_empty) = (0, 0);
    for seed in 0..RANDOM_QUERIES {
        let mut r = rng(seed);
        let g = random_store(&mut r, 30);
        let q = random_query(&mut r, &g, 4, true);
        let text = q.text();
        let table = evaluate(&g, &parse_query(&text).unwrap()).unwrap();
        let expected = brute_force(&g, &q);
        assert_eq!(
            table.rows(),
            expected.as_slice(),
            "case seed {seed}:\n{text}"
        );
        solutions += expected.len();
        non_empty += usize::from(!expected.is_empty());
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    format!(
        "{RANDOM_QUERIES} cases, {non_empty} non-empty, {solutions} result rows, {} ms",
        elapsed.as_millis()
    )
}

fn criterion_7() -> String {
    for (seed, g) in random_graphs().enumerate() {
        let once = saturate(&g, &feo_ruleset()).unwrap();
        assert!(
            g.iter().all(|t| once.contains(&t)),
            "not monotone, seed {seed}"
        );
        let twice = saturate(&once, &feo_ruleset()).unwrap();
        assert_eq!(
            raw_set(&twice),
            raw_set(&once),
            "not idempotent, seed {seed}"
        );
    }
    format!("{RANDOM_GRAPHS} graphs")
}

fn round_trips(g: &Graph) -> bool {
    let back = parse_turtle(&serialize_ntriples(g), None).expect("serialized graph parses");
    raw_set(&back) == raw_set(g)
}

fn criterion_8() -> String {
    let schema = parse_turtle(kb::SCHEMA_TTL, None).unwrap();
    let demo = parse_turtle(kb::DEMO_TTL, None).unwrap();
    assert!(round_trips(&schema), "schema.ttl");
    assert!(round_trips(&demo), "demo.ttl");
    for seed in 0..ROUND_TRIP_GRAPHS {
        assert!(
            round_trips(&random_roundtrip_graph(&mut rng(seed), 30)),
            "seed {seed}"
        );
    }
    format!("schema.ttl, demo.ttl and {ROUND_TRIP_GRAPHS} random graphs")
}

fn criterion_9() -> String {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for run in 0..2 {
        let path = dir.path().join(format!("inferred{run}.nt"));
        ok_stdout(&feo(&[
            "infer",
            &asset("schema.ttl"),
            &asset("demo.ttl"),
            "--out",
            path.to_str().unwrap(),
        ]));
        outputs.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(
        outputs[0], outputs[1],
        "feo infer output differs between runs"
    );
    for name in ["contextual", "contrastive", "counterfactual"] {
        let mut files = Vec::new();
        for run in 0..2 {
            let path = dir.path().join(format!("{name}{run}.tsv"));
            ok_stdout(&feo(&[
                "query",
                "--data",
                &asset("schema.ttl"),
                &asset("demo.ttl"),
                &asset(&format!("{name}.rq")),
                "--out",
                path.to_str().unwrap(),
            ]));
            files.push(std::fs::read(&path).unwrap());
        }
        assert_eq!(files[0], files[1], "{name} output differs between runs");
    }
    format!(
        "infer ({} bytes) and 3 queries byte-identical",
        outputs[0].len()
    )
}

fn main() {
    let criteria: [(&str, Check); 9] = [
        ("contextual query reproduces its result table", criterion_1),
        ("contrastive query reproduces its result table", criterion_2),
        (
            "counterfactual query reproduces its result table",
            criterion_3,
        ),
        ("rendered answers contain the key phrases", criterion_4),
        (
            "semi-naive saturation equals the naive fixpoint",
            criterion_5,
        ),
        (
            "query evaluation equals brute-force enumeration",
            criterion_6,
        ),
        ("saturation is idempotent and monotone", criterion_7),
        ("parse/serialize round trip", criterion_8),
        ("infer and query output are deterministic", criterion_9),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match catch_unwind(AssertUnwindSafe(check)) {
            Ok(detail) => println!("PASS {}: {name} ({detail})", i + 1),
            Err(payload) => {
                failures += 1;
                let reason = payload
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".into());
                println!("FAIL {}: {name}: {}", i + 1, reason.replace('\n', " | "));
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
