// Checks the coefficient inequalities behind the stability lifts and
// shows a lifted semistandard tableau.

use plethysm::partition;
use plethysm::specht::{verify_stability_all, StabilityMode};
use plethysm::tabloids::Caps;

fn run_example() -> String {
    let caps = Caps::default();
    let mut out = String::new();
    let (nu, mu) = (partition![2], partition![2]);
    for (mode, mu_tilde) in [(StabilityMode::HStrip, partition![1]), (StabilityMode::TwoColumn, partition![])] {
        for report in verify_stability_all(&nu, &mu, &mu_tilde, mode, &caps).unwrap() {
            assert!(report.inequality_holds);
            let witness = report.witness_tableau.map(|t| t.to_string()).unwrap_or_default();
            out += &format!(
                "{mode:?} {} -> {}: {} <= {} {witness}\n",
                report.lambda, report.lifted_lambda, report.r, report.lifted
            );
        }
    }
    out
}

fn main() {
    print!("{}", run_example());
}
