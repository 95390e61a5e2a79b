use fropin::{full_transformation_generators, Snapshot, UNLIMITED};
use std::time::Instant;

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    for n in 3..=max {
        let t = Instant::now();
        let mut s = Snapshot::minimal(full_transformation_generators(n)).unwrap();
        s.froidure_pin(UNLIMITED).unwrap();
        println!("T_{n}: size={} products={} rules={} ms={}", s.len(), s.products(), s.nr_rules(), t.elapsed().as_millis());
    }
}
