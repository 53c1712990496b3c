// Semistandard homomorphisms `Θ̄_τ` into `M^{ν[μ]}`: the rank of their
// images on `e(t)` recovers each plethysm coefficient.

use plethysm::partition;
use plethysm::partitions::enumerate_partitions;
use plethysm::specht::ssh_family;
use plethysm::symfunc::plethysm_coefficient;
use plethysm::tabloids::Caps;

fn run_example() -> String {
    let (nu, mu) = (partition![3], partition![2]);
    let caps = Caps::default();
    let mut out = String::new();
    for lambda in enumerate_partitions(6).unwrap() {
        let family = ssh_family(&lambda, &nu, &mu, &caps).unwrap();
        let vectors: Vec<_> = family.iter().map(|(_, v)| v.clone()).collect();
        let rank = plethysm::linalg::span_rank(&vectors).unwrap();
        assert_eq!(num_bigint::BigInt::from(rank), plethysm_coefficient(&nu, &mu, &lambda).unwrap());
        if rank > 0 {
            let tableaux: Vec<String> = family.iter().map(|(tau, _)| tau.to_string()).collect();
            out += &format!("s{lambda}: rank {rank} from {}\n", tableaux.join(" "));
        }
    }
    out
}

fn main() {
    print!("{}", run_example());
}
