// Expands `h_ν[h_μ]` in the Schur basis and checks it against the
// monomial oracle.

use num_traits::One;
use plethysm::partition;
use plethysm::symfunc::{monomial_oracle_expand, plethysm_schur, schur_from_monomials};

fn run_example() -> String {
    let mut out = String::new();
    for (nu, mu) in [(partition![2], partition![2]), (partition![3], partition![2]), (partition![2], partition![2, 1])] {
        let expansion = plethysm_schur(&nu, &mu).unwrap();
        let degree = nu.size() * mu.size();
        let oracle = schur_from_monomials(&monomial_oracle_expand(&nu, &mu, degree).unwrap(), degree).unwrap();
        assert_eq!(*expansion, oracle);
        let terms: Vec<String> = expansion
            .terms()
            .rev()
            .map(|(l, c)| if c.is_one() { format!("s{l}") } else { format!("{c}·s{l}") })
            .collect();
        out += &format!("h{nu}[h{mu}] = {}\n", terms.join(" + "));
    }
    out
}

fn main() {
    print!("{}", run_example());
}
