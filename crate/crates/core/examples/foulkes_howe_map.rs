// Builds the Foulkes-Howe map `F_{ν,μ}` and reports its rank.

use plethysm::partition;
use plethysm::tabloids::{fh_map_matrix, Caps};

fn run_example() -> String {
    let caps = Caps::default();
    let mut out = String::new();
    for (nu, mu) in [(partition![2], partition![3]), (partition![2], partition![2]), (partition![1, 1], partition![2])] {
        let map = fh_map_matrix(&nu, &mu, &caps).unwrap();
        out += &format!(
            "F{nu},{mu}: {} x {}, nnz {}, rank {}, injective {}\n",
            map.matrix.rows(),
            map.matrix.cols(),
            map.matrix.nnz(),
            map.rank(),
            map.is_injective()
        );
    }
    out
}

fn main() {
    print!("{}", run_example());
}
