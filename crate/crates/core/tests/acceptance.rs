//! One line per acceptance criterion. A criterion whose statement is false as written is
//! reported as unattainable; the run fails only if a criterion, or a true part of an
//! unattainable one, fails. The literal statements are ignored tests in `literal_claims.rs`.

use std::process::ExitCode;

use ffdisc::checks::{run, Profile, Status};

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for id in 1..=10 {
        let r = run(id, Profile::Full);
        println!("{}", r.line());
        if r.status == Status::Fail {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: ok");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
