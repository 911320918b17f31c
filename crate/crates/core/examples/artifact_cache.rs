//! Caches an order complex on disk under a content-hash key and reloads it,
//! as the command line does with `--cache-dir`.
//!
//! ```bash
//! cargo run --release --example artifact_cache -- /tmp/trisp-cache
//! ```

use std::time::Instant;

use trisp_homology::cache::{cache_key, ComplexCache};
use trisp_homology::complex::order_complex;
use trisp_homology::poset::build_reduced_partition_lattice;

fn main() -> trisp_homology::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(std::path::PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("trisp-example-cache"));
    let cache = ComplexCache::new(&dir);
    let poset = build_reduced_partition_lattice(6)?;
    let expected: Vec<usize> = poset.chain_counts().iter().map(|&c| c as usize).collect();
    let key = cache_key(&["order-complex", "partition", "6"]);

    for attempt in 1..=2 {
        let t = Instant::now();
        let (c, hit) = cache.get_or_build(
            &key,
            |c| c.f_vector().0 == expected,
            || Ok(order_complex(&poset)),
        )?;
        println!(
            "attempt {attempt}: {} f = {} in {:.1?}",
            if hit { "loaded" } else { "built" },
            c.f_vector(),
            t.elapsed()
        );
    }
    println!("cache file: {}", cache.path_for(&key).display());
    Ok(())
}
