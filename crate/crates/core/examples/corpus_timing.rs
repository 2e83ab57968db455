use reidemeister::corpus::CorpusConfig;
use reidemeister::pipeline::run_corpus;

fn main() {
    let config = CorpusConfig::builtin();
    let start = std::time::Instant::now();
    let reports = run_corpus(&config);
    let failed: Vec<_> = reports.iter().filter(|r| !r.all_ok()).collect();
    println!("cases: {}, elapsed: {:?}, failures: {}", reports.len(), start.elapsed(), failed.len());
    for f in failed.iter().take(10) {
        println!("FAIL {}: {:?}", f.case_id, f.checks);
    }
    // slowest groups
    let mut by_time: Vec<_> = reports.iter().map(|r| (r.elapsed_ms, r.case_id.clone())).collect();
    by_time.sort_unstable_by(|a, b| b.0.cmp(&a.0));
    for (ms, id) in by_time.iter().take(10) {
        println!("{ms} ms  {id}");
    }
}
