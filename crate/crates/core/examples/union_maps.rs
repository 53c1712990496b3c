// Outer and inner unions of plethystic tabloids, and an injection for
// `(1,1)[(2)]` assembled from two copies of `F_{(1),(2)}`.

use plethysm::partition;
use plethysm::tabloids::{
    fh_map_matrix, union_compose_injection, union_inner_inject, union_outer_iso, Caps, PlethysticTabloid, Tabloid,
};

fn tabloid(rows: &[&[usize]]) -> Tabloid {
    Tabloid::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn run_example() -> String {
    let mut out = String::new();
    let two = partition![2];
    let t1 = PlethysticTabloid::new(&two, vec![vec![tabloid(&[&[1, 4]]), tabloid(&[&[2, 6]])]]).unwrap();
    let t2 = PlethysticTabloid::new(&two, vec![vec![tabloid(&[&[3, 5]])]]).unwrap();
    let joined = union_outer_iso(&t1, &t2).unwrap();
    out += &format!("outer union has shape {}[{}]\n", joined.outer(), joined.inner());

    let one = partition![1];
    let a = PlethysticTabloid::new(&one, vec![vec![tabloid(&[&[1]]), tabloid(&[&[2]])]]).unwrap();
    let b = PlethysticTabloid::new(&one, vec![vec![tabloid(&[&[3]]), tabloid(&[&[4]])]]).unwrap();
    let image = union_inner_inject(&a, &b).unwrap();
    out += &format!("inner union has {} terms of mass {}\n", image.len(), image.mass());

    let caps = Caps::default();
    let f = fh_map_matrix(&one, &two, &caps).unwrap();
    let composite = union_compose_injection(&f, &f, &caps).unwrap();
    out += &format!(
        "composite: {} columns, rank {}, injective {}\n",
        composite.matrix.cols(),
        composite.rank(),
        composite.is_injective()
    );
    out
}

fn main() {
    print!("{}", run_example());
}
