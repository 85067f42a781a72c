use lenkrull::run::{render, run_batch};
use lenkrull::{Command, Output, Request, Suite};
use lenkrull_core::zmodule::FactorBound;
use proptest::prelude::*;

const BOUND: FactorBound = FactorBound(1_000_000);

/// Arbitrary printable text, including quotes, spaces and shell metacharacters.
fn text() -> impl Strategy<Value = String> {
    "[ -~]{0,24}".prop_filter("not a flag", |s| !s.starts_with('-'))
}

fn command() -> impl Strategy<Value = Command> {
    let suite = prop::sample::select(vec![
        Suite::Caractl,
        Suite::Additivity,
        Suite::Sigmaprime,
        Suite::OracleEquivalence,
        Suite::MonomialAdditivity,
        Suite::All,
    ]);
    prop_oneof![
        (text(), prop::option::of(text())).prop_map(|(ring, ideal)| Command::Ring { ring, ideal }),
        (text(), text()).prop_map(|(ring, module)| Command::Module { ring, module }),
        prop_oneof![
            text().prop_map(|m| Command::Zmodule {
                matrix: Some(m),
                presentation: None
            }),
            text().prop_map(|p| Command::Zmodule {
                matrix: None,
                presentation: Some(p)
            }),
        ],
        (any::<u64>(), text()).prop_map(|(free, torsion)| Command::Localpid { free, torsion }),
        (suite, any::<u64>(), any::<u64>()).prop_map(|(suite, trials, seed)| Command::Verify {
            suite,
            trials,
            seed
        }),
    ]
}

fn request() -> impl Strategy<Value = Request> {
    (command(), prop::bool::ANY).prop_map(|(command, json)| Request {
        output: if json { Output::Json } else { Output::Text },
        command,
    })
}

proptest! {
    #[test]
    fn formatted_requests_parse_back(req in request()) {
        let line = req.to_line();
        prop_assert_eq!(Request::from_line(&line).unwrap(), req.clone());
        prop_assert_eq!(Request::from_words(&req.to_words()).unwrap(), req);
    }
}

#[test]
fn defaults_fill_in() {
    let req = Request::from_line("verify").unwrap();
    assert_eq!(
        req.command,
        Command::Verify {
            suite: Suite::All,
            trials: 100,
            seed: 0
        }
    );
    assert_eq!(req.output, Output::Text);
    let req = Request::from_line("localpid --output json --free 2").unwrap();
    assert_eq!(
        req.command,
        Command::Localpid {
            free: 2,
            torsion: String::new()
        }
    );
    assert_eq!(req.output, Output::Json);
    assert!(Request::from_line("zmodule").is_err());
    assert!(Request::from_line("ring 'Z").is_err());
}

#[test]
fn identical_requests_render_identically() {
    let req = Request::from_line("module 'Z[x,y]' '(6, x^2*y) (+) (y)' --output json").unwrap();
    let first = render(&req, BOUND);
    for _ in 0..5 {
        assert_eq!(render(&req, BOUND), first);
    }
}

#[test]
fn batch_output_follows_input_order() {
    let lines: Vec<String> = (0..300)
        .map(|i| match i % 4 {
            0 => format!("zmodule --matrix '[[{}]]'", i + 2),
            1 => format!(
                "ring 'GF(2)[x,y]' --ideal 'x^{}, y^{}'",
                i % 7 + 1,
                i % 5 + 1
            ),
            2 => format!("localpid --free {} --torsion '1:{}'", i % 6, i % 3),
            _ => format!("module 'Z[x]' '({})'", i),
        })
        .collect();
    let mut contents = String::from("# generated\n");
    for l in &lines {
        contents.push_str(l);
        contents.push_str("\n\n");
    }
    let (outputs, code) = run_batch(&contents, Output::Json, BOUND);
    assert_eq!(outputs.len(), lines.len());
    let serial: Vec<String> = lines
        .iter()
        .map(|l| {
            let mut req = Request::from_line(l).unwrap();
            req.output = Output::Json;
            render(&req, BOUND).0
        })
        .collect();
    assert_eq!(outputs, serial);
    // Some `module 'Z[x]' '(n)'` lines have non-squarefree n.
    assert_eq!(code, lenkrull::EXIT_INPUT);
}

#[test]
fn argument_definitions_are_consistent() {
    use clap::CommandFactory;
    lenkrull::Cli::command().debug_assert();
    Request::command().debug_assert();
}
