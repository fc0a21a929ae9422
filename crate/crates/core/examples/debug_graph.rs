// find first disagreement between oracles
use mlmath_core::graphs::{gen_connected_graph, girth, has_hamiltonian_cycle, is_eulerian, is_planar, brute, Graph};
use mlmath_core::rng::{Rng, RngSeed};

fn main() {
    let mut rng = Rng::from_seed(RngSeed(31));
    for trial in 0..200u64 {
        let v = 5 + rng.below(5);
        let p = rng.range_f64(0.2, 0.8);
        let Ok(g) = gen_connected_graph(v, p, RngSeed(5000 + trial)) else { continue };
        let gi = girth(&g); let gb = brute::girth_by_cycle_enumeration(&g);
        if gi != gb { println!("GIRTH trial {trial} v {v}: fast {gi:?} brute {gb:?}"); dump(&g); return; }
        let h = has_hamiltonian_cycle(&g).unwrap(); let hb = brute::hamiltonian_by_permutations(&g);
        if h != hb { println!("HAM trial {trial} v {v}: fast {h} brute {hb}"); dump(&g); return; }
        let e = is_eulerian(&g); let eb = brute::eulerian_by_hierholzer(&g);
        if e != eb { println!("EULER trial {trial} v {v}: fast {e} brute {eb}"); dump(&g); return; }
        if v <= 7 {
            let p1 = is_planar(&g); let p2 = brute::planar_by_kuratowski(&g);
            if p1 != p2 { println!("PLANAR trial {trial} v {v}: fast {p1} brute {p2}"); dump(&g); return; }
        }
    }
    println!("all agree");
}
fn dump(g: &Graph) {
    let v = g.order();
    println!("v={v} e={}", g.edge_count());
    for a in 0..v { for b in a+1..v { if g.has_edge(a,b) { print!("({a},{b}) "); } } }
    println!();
}
