use levdec::branching::BranchCache;
use levdec::cartan::{build_cartan, BaseSeries};
use levdec::tha;
use std::time::Instant;
fn main() {
    let t0 = Instant::now();
    let spec = build_cartan(BaseSeries::E8, 1, false).unwrap();
    let cache = BranchCache::disabled();
    let levels = levdec::borcherds::borcherds_levels(&spec, 0, 8, 22, 7, &cache).unwrap();
    println!("E9 levels (m<=7) in {:?}", t0.elapsed());
    let table = levdec::rootmult::peterson_multiplicities(&spec, 8, 7).unwrap();
    let adj = levdec::rootmult::adjoint_gl_grading(&spec, &table, 8, 7).unwrap();
    println!("E9 adjoint in {:?}", t0.elapsed());
    let content = tha::assemble_content(
        &levels, tha::AssembleMode::BorcherdsOnly, 3, 3, 0, 22, 7, Some(&adj),
    ).unwrap();
    let extras = tha::detect_extras(&content).unwrap();
    println!("E9 extras m<=7 ({:?}):", t0.elapsed());
    for e in extras.iter() {
        println!("  ({}, {}): {}", e.level, e.degree, e.content.render());
    }
}
