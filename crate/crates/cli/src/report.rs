use std::fmt;
use std::time::Duration;

use fropin::Snapshot;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Sequential,
    Concurrent,
}

/// What one run produced. Displays as the report line
/// `size=<n> products=<n> rules=<n> ms=<n> complete=<bool>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunReport {
    pub size: usize,
    pub products: u64,
    pub rules: usize,
    pub ms: u128,
    pub engine: Engine,
    pub fragments: usize,
    pub limit: Option<u64>,
    pub complete: bool,
}

impl RunReport {
    pub fn new(s: &Snapshot, engine: Engine, fragments: usize, limit: Option<u64>, wall: Duration) -> Self {
        RunReport {
            size: s.len(),
            products: s.products(),
            rules: s.nr_rules(),
            ms: wall.as_millis(),
            engine,
            fragments,
            limit,
            complete: s.is_complete(),
        }
    }

    /// Parses a report line back into `(size, products, rules, ms, complete)`.
    pub fn parse_line(line: &str) -> Option<(usize, u64, usize, u128, bool)> {
        let mut fields = line.split_whitespace().map(|f| f.split_once('='));
        let mut next = |key: &str| match fields.next()? {
            Some((k, v)) if k == key => Some(v.to_owned()),
            _ => None,
        };
        Some((
            next("size")?.parse().ok()?,
            next("products")?.parse().ok()?,
            next("rules")?.parse().ok()?,
            next("ms")?.parse().ok()?,
            next("complete")?.parse().ok()?,
        ))
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "size={} products={} rules={} ms={} complete={}",
            self.size, self.products, self.rules, self.ms, self.complete
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_round_trips() {
        let r = RunReport {
            size: 27,
            products: 40,
            rules: 16,
            ms: 3,
            engine: Engine::Sequential,
            fragments: 1,
            limit: None,
            complete: true,
        };
        let line = r.to_string();
        assert_eq!(line, "size=27 products=40 rules=16 ms=3 complete=true");
        assert_eq!(RunReport::parse_line(&line), Some((27, 40, 16, 3, true)));
        assert_eq!(RunReport::parse_line("products=1 size=2"), None);
    }
}
