//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines are always printed.

use std::process::ExitCode;
use std::time::Instant;

use toroidal_core::geom::{symplectic_pair_check, tangent_character};
use toroidal_core::partitions::{enumerate, Partition};
use toroidal_core::shuffle::{make_f, shuffle_product, wheel_check};
use toroidal_core::symfun::macdonald_oracle_check;
use toroidal_core::verify::{
    verify_c_identity, verify_exponential_form, verify_orthogonality, verify_poles, verify_routes, verify_vacuum,
    verify_ybe, VerificationReport,
};

type Outcome = Result<(), String>;

fn from_report(r: VerificationReport) -> Outcome {
    if r.passed() {
        Ok(())
    } else {
        let w = &r.witnesses[0];
        Err(format!("{} failures, first {}: {} vs {}", r.witnesses.len(), w.index, w.lhs, w.rhs))
    }
}

fn orthogonality() -> Outcome {
    from_report(verify_orthogonality(5))
}

fn oracle() -> Outcome {
    for k in 0..=4 {
        for lam in enumerate(k) {
            for n in 1..=5 {
                let r = macdonald_oracle_check(&lam, n).map_err(|e| e.to_string())?;
                if !r.holds {
                    return Err(format!("lambda=({lam}) nvars={n}"));
                }
            }
        }
    }
    Ok(())
}

fn routes() -> Outcome {
    from_report(verify_routes(2))
}

fn c_identity() -> Outcome {
    from_report(verify_c_identity(2))
}

fn ybe() -> Outcome {
    from_report(verify_ybe(2).map_err(|e| e.to_string())?)
}

fn poles() -> Outcome {
    from_report(verify_poles(3))
}

fn vacuum() -> Outcome {
    from_report(verify_vacuum(4).map_err(|e| e.to_string())?)
}

fn shuffle() -> Outcome {
    let err = |e: toroidal_core::CoreError| e.to_string();
    for m in 1..=3 {
        for n in 1..=4 - m {
            if m >= n {
                continue;
            }
            let a = shuffle_product(&make_f(m), &make_f(n)).map_err(err)?;
            let b = shuffle_product(&make_f(n), &make_f(m)).map_err(err)?;
            if !a.value_eq(&b) {
                return Err(format!("F_{m} * F_{n} != F_{n} * F_{m}"));
            }
        }
    }
    if !wheel_check(&make_f(3)).map_err(err)? {
        return Err("F_3 fails the wheel conditions".into());
    }
    let f1 = make_f(1);
    let f11 = shuffle_product(&f1, &f1).map_err(err)?;
    let f111 = shuffle_product(&f11, &f1).map_err(err)?;
    let f12 = shuffle_product(&f1, &make_f(2)).map_err(err)?;
    let f1111 = shuffle_product(&f111, &f1).map_err(err)?;
    for (name, e) in [("F1*F1*F1", &f111), ("F1*F2", &f12), ("F1*F1*F1*F1", &f1111)] {
        if !wheel_check(e).map_err(err)? {
            return Err(format!("{name} fails the wheel conditions"));
        }
    }
    Ok(())
}

fn fixed_points(r: usize, n: u32) -> Vec<Vec<Partition>> {
    if r == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for k in 0..=n {
        for lam in enumerate(k) {
            for mut rest in fixed_points(r - 1, n - k) {
                rest.insert(0, lam.clone());
                out.push(rest);
            }
        }
    }
    out
}

fn geometry() -> Outcome {
    for r in 1..=2 {
        for n in 0..=4 {
            for p in fixed_points(r, n) {
                let ch = tangent_character(&p);
                if ch.len() != 2 * r * n as usize {
                    return Err(format!("dimension {} at {p:?}", ch.len()));
                }
                if !symplectic_pair_check(&ch) {
                    return Err(format!("pairing fails at {p:?}"));
                }
            }
        }
    }
    Ok(())
}

fn exponential() -> Outcome {
    from_report(verify_exponential_form(3, 4).map_err(|e| e.to_string())?)
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Macdonald orthogonality, |lambda| <= 5", orthogonality),
        ("q-difference eigencheck, |lambda| <= 4, nvars <= 5", oracle),
        ("route equality r_elem = via Rbar, weight <= 2", routes),
        ("C-identity, weight <= 2", c_identity),
        ("Yang-Baxter in Q(qh,th,x,y), weight <= 2", ybe),
        ("simple poles of r_block(n), n <= 3", poles),
        ("vacuum series equals N(u) to u^-4, first coefficient alpha", vacuum),
        ("shuffle commutativity m+n <= 4 and wheel conditions", shuffle),
        ("tangent characters: dimension 2rn and symplectic pairing, n <= 4, r <= 2", geometry),
        ("exponential form of f_lambda to u^-4, |lambda| <= 3", exponential),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = run();
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(()) => println!("acceptance {:>2} PASS {name} ({secs:.1}s)", k + 1),
            Err(e) => {
                failed += 1;
                println!("acceptance {:>2} FAIL {name} ({secs:.1}s): {e}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
