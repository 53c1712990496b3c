// Hasse diagram of `⊴` on non-column partitions of size at most 3, as
// Graphviz DOT.

use plethysm::order::{hasse_diagram, poset_nodes, OrderConfig};

fn run_example() -> String {
    let nodes = poset_nodes(3, false).unwrap();
    let diagram = hasse_diagram(&nodes, &OrderConfig::default()).unwrap();
    assert!(diagram.uncomputed.is_empty());
    diagram.to_dot()
}

fn main() {
    print!("{}", run_example());
}
