use std::time::Instant;

use fropin::concurrent::{concurrent_froidure_pin, ConcurrentOptions};
use fropin::full_transformation_generators;

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(6);
    let recompute = std::env::args().any(|a| a == "--recompute");
    for n in 3..=max {
        for k in [1, 2, 4, 8] {
            let t = Instant::now();
            let run = concurrent_froidure_pin(
                full_transformation_generators(n),
                ConcurrentOptions { fragments: k, recompute, ..Default::default() },
            )
            .unwrap();
            println!(
                "T_{n} k={k} size={} products={} ms={}",
                run.snapshot.len(),
                run.snapshot.products(),
                t.elapsed().as_millis()
            );
        }
    }
}
