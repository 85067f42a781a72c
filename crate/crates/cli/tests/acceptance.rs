//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lenkrull::report::{Analysis, Report};
use lenkrull::{run, Command, Output, Request};
use lenkrull_core::length::{
    analyze, BaseRing, CbResult, CyclicPiece, LengthVector, ModuleDescriptor, RingDescriptor,
};
use lenkrull_core::localpid::{cb_rank_local_pid, lengths_local_pid, LocalPidModule};
use lenkrull_core::monomial::{Face, MonomialIdeal};
use lenkrull_core::oracles::{
    abelian_groups_of_order, check_additivity_z, check_caractl_memo, check_oracle_equivalence,
    random_monomial_ideal, sample_sequence,
};
use lenkrull_core::zmodule::{length_vector_z, smith_normal_form, FactorBound, ZPresentation};
use lenkrull_core::Ordinal;
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const BOUND: FactorBound = FactorBound(1_000_000);
const SEED: u64 = 20_240_601;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

fn request(command: Command) -> Analysis {
    let req = Request {
        output: Output::Json,
        command,
    };
    match run(&req, BOUND) {
        Ok(Report::Analysis(a)) => a,
        other => panic!("{}: {other:?}", req.to_line()),
    }
}

/// ℓ rebuilt from ω·ℓ' + ℓ₀ with ordinal arithmetic.
fn identity_holds(v: &LengthVector) -> bool {
    let rebuilt = v
        .reduced_length()
        .left_mul_omega()
        .add(&Ordinal::finite(v.get(0)));
    rebuilt == v.length() && v.satisfies_length_identity()
}

fn ring(base: BaseRing, n: usize) -> RingDescriptor {
    let vars = (1..=n).map(|i| format!("x{i}")).collect();
    RingDescriptor::new(base, vars, BOUND).unwrap()
}

/// Length vectors of every module each criterion looked at, for the identity check.
#[derive(Default)]
struct Seen(Vec<LengthVector>);

fn free_rings(seen: &mut Seen) -> Outcome {
    let expected = [
        Ordinal::finite(1u32),
        Ordinal::omega(),
        Ordinal::omega_pow(2u32),
        Ordinal::omega_pow(3u32),
    ];
    for (text, want) in ["Z", "Z[x]", "Z[x,y]", "Z[x,y,z]"].iter().zip(expected) {
        let a = request(Command::Ring {
            ring: text.to_string(),
            ideal: None,
        });
        seen.0.push(a.length_vector.clone());
        if a.cb_rank != CbResult::Exact(want.clone()) {
            return fail(format!("{text}: cb rank {:?}, expected {want}", a.cb_rank));
        }
    }
    pass("Z, Z[x], Z[x,y], Z[x,y,z] have cb rank 1, w, w^2, w^3")
}

fn domain_corollary(seen: &mut Seen) -> Outcome {
    let mut count = 0;
    for (base, n) in [
        (BaseRing::FiniteField(2u32.into()), 3),
        (BaseRing::Integers, 2),
    ] {
        let shift = u32::from(base == BaseRing::Integers);
        for face in Face::all(n) {
            let m = ModuleDescriptor::quotient_ring(
                ring(base.clone(), n),
                CyclicPiece::monomial(MonomialIdeal::prime(n, face)),
                BOUND,
            )
            .unwrap();
            let r = analyze(&m, BOUND).unwrap();
            seen.0.push(r.length_vector.clone());
            let dim = face.len() as u32 + shift;
            if r.dimension != Some(dim) || r.length != Ordinal::omega_pow(dim) {
                return fail(format!(
                    "{m:?}: dimension {:?}, length {}",
                    r.dimension, r.length
                ));
            }
            let cb = if dim == 0 {
                Ordinal::zero()
            } else {
                Ordinal::omega_pow(dim - 1)
            };
            if r.cb_rank != CbResult::Exact(cb) {
                return fail(format!("{m:?}: cb rank {:?}", r.cb_rank));
            }
            count += 1;
        }
    }
    pass(format!(
        "{count} monomial primes: cb = w^(dim-1), length = w^dim"
    ))
}

fn oracle_equivalence(seen: &mut Seen) -> Outcome {
    let report = check_oracle_equivalence(200, SEED);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..200 {
        let ideal = random_monomial_ideal(&mut rng);
        let m = ModuleDescriptor::quotient_ring(
            ring(BaseRing::FiniteField(2u32.into()), ideal.n_vars()),
            CyclicPiece::monomial(ideal),
            BOUND,
        )
        .unwrap();
        seen.0.push(analyze(&m, BOUND).unwrap().length_vector);
    }
    if report.passed() && report.trials == 200 {
        pass(format!(
            "200 ideals, {} face comparisons agree",
            report.checks
        ))
    } else {
        fail(report.failures.join("; "))
    }
}

fn additivity(seen: &mut Seen) -> Outcome {
    let report = check_additivity_z(100, SEED);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for trial in 0..100u64 {
        let (_, _, seq) = sample_sequence(&mut rng, trial % 2 == 1);
        for nf in [seq.middle, seq.kernel, seq.quotient] {
            seen.0.push(length_vector_z(&nf, BOUND).unwrap());
        }
    }
    if report.passed() {
        pass(format!(
            "100 exact sequences, {} additivity checks",
            report.checks
        ))
    } else {
        fail(report.failures.join("; "))
    }
}

fn caractl(seen: &mut Seen) -> Outcome {
    let mut memo = Default::default();
    let orders = (1..=100u64).chain(
        [2u64, 3]
            .into_iter()
            .flat_map(|p| (0..=4).map(move |a| p.pow(a))),
    );
    let mut groups = 0;
    for n in orders {
        for g in abelian_groups_of_order(n) {
            seen.0
                .push(length_vector_z(&smith_normal_form(&g.presentation()), BOUND).unwrap());
            match check_caractl_memo(&g, &mut memo) {
                Ok(true) => groups += 1,
                Ok(false) => return fail(format!("{g}")),
                Err(e) => return fail(format!("{g}: {e}")),
            }
        }
    }
    pass(format!("{groups} groups of order <= 100 or p^a"))
}

fn identity(seen: &Seen) -> Outcome {
    match seen.0.iter().find(|v| !identity_holds(v)) {
        None => pass(format!("l = w*l' + l0 for all {} modules", seen.0.len())),
        Some(v) => fail(format!("fails for {v:?}")),
    }
}

fn local_pid() -> Outcome {
    // M × M with M simple: ℓ' = 0 and cb = 1.
    let mm = LocalPidModule::new(0, [(1, 2)]);
    if mm.length_vector().reduced_length() != Ordinal::zero()
        || cb_rank_local_pid(&mm) != Ordinal::finite(1u32)
    {
        return fail("M x M");
    }
    for n in 0..=4u64 {
        let even = cb_rank_local_pid(&LocalPidModule::new(2 * n, []));
        let odd = cb_rank_local_pid(&LocalPidModule::new(2 * n + 1, []));
        let wn = Ordinal::finite(n).left_mul_omega();
        if even != wn || odd != wn.add(&Ordinal::finite(1u32)) {
            return fail(format!("parity at n = {n}"));
        }
    }
    let mut cases = 0;
    for r in 0..=5u64 {
        for t in torsion_tables(6) {
            let m = LocalPidModule::new(r, t.iter().copied());
            let cb = cb_rank_local_pid(&m);
            let v = m.length_vector();
            let (length, displayed) = lengths_local_pid(&m);
            let upper = if length.is_successor() {
                length.saturating_pred()
            } else {
                length.clone()
            };
            let ok = v.length() == length
                && v.reduced_length() <= cb
                && displayed.clone().min(cb.clone()) <= cb
                && cb <= upper;
            if !ok {
                return fail(format!("sandwich fails for r = {r}, T = {t:?}"));
            }
            cases += 1;
        }
    }
    pass(format!("M x M, parity n <= 4, sandwich on {cases} modules"))
}

fn torsion_tables(max: u64) -> Vec<Vec<(u64, u64)>> {
    fn go(start: u64, budget: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<(u64, u64)>>) {
        let mut table: Vec<(u64, u64)> = Vec::new();
        for &i in cur.iter() {
            match table.last_mut() {
                Some((j, n)) if *j == i => *n += 1,
                _ => table.push((i, 1)),
            }
        }
        out.push(table);
        for i in start..=budget {
            cur.push(i);
            go(i, budget - i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, max, &mut Vec::new(), &mut out);
    out
}

fn bounds_mode() -> Outcome {
    let a = request(Command::Ring {
        ring: "Q[x]".into(),
        ideal: Some("x^2".into()),
    });
    let want = CbResult::Bounds {
        lower: Ordinal::zero(),
        upper: Ordinal::finite(1u32),
    };
    if a.cb_rank == want {
        pass("Q[x]/(x^2): cb rank between 0 and 1")
    } else {
        fail(format!("got {:?}", a.cb_rank))
    }
}

fn unboundedness() -> Outcome {
    let mut previous = BigUint::default();
    for n in 1..=16u32 {
        let p = ZPresentation::diagonal(&[BigUint::from(2u32).pow(n)]);
        let l0 = length_vector_z(&smith_normal_form(&p), BOUND)
            .unwrap()
            .get(0);
        if l0 != BigUint::from(n) || l0 <= previous {
            return fail(format!("l0(Z/2^{n}) = {l0}"));
        }
        previous = l0;
    }
    pass("l0(Z/2^n) = n for n <= 16")
}

fn main() -> ExitCode {
    let mut seen = Seen::default();
    let mut all_ok = true;
    let mut check = |id: u32, name: &str, limit: Duration, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let ok = outcome.ok && took < limit;
        all_ok &= ok;
        println!(
            "{} criterion {id} ({name}): {} [{:.3}s, limit {}s]",
            if ok { "PASS" } else { "FAIL" },
            outcome.detail,
            took.as_secs_f64(),
            limit.as_secs()
        );
    };
    let s = Duration::from_secs;
    check(1, "free rings", s(1), &mut || free_rings(&mut seen));
    check(2, "domains", s(5), &mut || domain_corollary(&mut seen));
    check(3, "oracle equivalence", s(30), &mut || {
        oracle_equivalence(&mut seen)
    });
    check(4, "additivity", s(10), &mut || additivity(&mut seen));
    check(5, "recursive length", s(30), &mut || caractl(&mut seen));
    check(6, "length identity", s(30), &mut || identity(&seen));
    check(7, "local PID", s(1), &mut local_pid);
    check(8, "bounds mode", s(1), &mut bounds_mode);
    check(9, "unbounded lengths", s(1), &mut unboundedness);
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
