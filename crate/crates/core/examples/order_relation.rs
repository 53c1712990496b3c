// Decides `ν ⊴ μ` for a few pairs and prints the witness when it fails.

use plethysm::order::is_le;
use plethysm::partition;

fn run_example() -> String {
    let mut out = String::new();
    for (nu, mu) in [
        (partition![2], partition![3]),
        (partition![3], partition![2]),
        (partition![2, 2], partition![2]),
        (partition![1, 1], partition![2, 1]),
    ] {
        let verdict = is_le(&nu, &mu).unwrap();
        match &verdict.witness {
            None => out += &format!("{nu} ⊴ {mu}\n"),
            Some(lambda) => out += &format!("{nu} ⋬ {mu}, negative at s{lambda}\n"),
        }
    }
    out
}

fn main() {
    print!("{}", run_example());
}
