//! Scratch probe: scan costs for multi-strand belt nodes and pair movies.

use std::time::Instant;

use lasagna::cabling::scripts::{belt_pair_movie, full_twist, node_slices, prefixed_node_slices};
use lasagna::cabling::Scanner;

fn probe(sc: &mut Scanner, t0: &Instant, name: &str, slices: &[lasagna::khr2::Slice]) {
    let t = Instant::now();
    let c = sc.scan(0, slices);
    eprintln!(
        "{name}: objs {} in {:.1}s (total {:.1}s)",
        c.n_objects(),
        t.elapsed().as_secs_f64(),
        t0.elapsed().as_secs_f64()
    );
}

fn main() {
    let mut sc = Scanner::new();
    let t0 = Instant::now();
    for (s, b) in [(3, 2), (3, 4), (3, 5)] {
        probe(&mut sc, &t0, &format!("({s},{b})"), &node_slices(s, b));
    }
    {
        let t = Instant::now();
        let (start, evs, _end) = belt_pair_movie(3, 2, 0, true);
        let r = lasagna::cabling::run_movie(
            &mut sc,
            0,
            &start,
            &evs,
            (0, 0),
            &lasagna::cabling::MovieOpts { strict: false },
        );
        eprintln!(
            "movie(3,2): src {} tgt {} in {:.1}s (total {:.1}s)",
            r.src.n_objects(),
            r.tgt.n_objects(),
            t.elapsed().as_secs_f64(),
            t0.elapsed().as_secs_f64()
        );
    }
    for (s, b) in [(5, 0), (5, 1), (5, 2), (5, 3), (5, 4), (5, 5)] {
        probe(&mut sc, &t0, &format!("({s},{b})"), &node_slices(s, b));
    }
    probe(&mut sc, &t0, "(3,4)+ft", &prefixed_node_slices(3, 4, &full_twist(3)));
    probe(&mut sc, &t0, "(5,4)+ft", &prefixed_node_slices(5, 4, &full_twist(5)));
    eprintln!("done in {:.1}s", t0.elapsed().as_secs_f64());
}
