use skewpath::closed_form::rational_to_f64;
use skewpath::height::{average_height_asymptotic, average_height_exact_many};
use skewpath::sampler::{empirical_height_stats, CountTable};

fn main() {
    let ns = [25usize, 50, 100, 200, 400, 600, 800];
    let t0 = std::time::Instant::now();
    for (n, avg) in average_height_exact_many(&ns) {
        let exact = rational_to_f64(&avg);
        let asym = average_height_asymptotic(n);
        println!(
            "n={n:4}  exact={exact:10.5}  asym={asym:10.5}  ratio={:.6}  (exact-asym)={:+.4}  dev*sqrt(n)={:+.4}",
            exact / asym,
            exact - asym,
            (exact / asym - 1.0) * (n as f64).sqrt(),
        );
    }
    println!("family pass: {:?}", t0.elapsed());

    let t1 = std::time::Instant::now();
    let table = CountTable::build(400);
    println!("count table n=400 built in {:?}", t1.elapsed());
    let t2 = std::time::Instant::now();
    let stats = empirical_height_stats(&table, 2000, 777);
    println!(
        "sampled mean height at n=400 over 2000 draws: {:.4} +- {:.4}  ({:?})",
        stats.mean,
        stats.stderr,
        t2.elapsed()
    );
}
