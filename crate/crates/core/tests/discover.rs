use cayleyqc_core::cayley::*;
use cayleyqc_core::css::*;
use cayleyqc_core::gf2::*;
use cayleyqc_core::sampling::*;
use std::time::Instant;

/// Exhaustive oracle over all 2^16 indicators.
fn oracle_min_d(g: &CayleyGraph) -> Option<usize> {
    let a = g.adjacency_matrix().unwrap();
    let nv = g.vertex_count() as usize;
    let span = RowSpace::from_matrix(&a);
    let mut best: Option<usize> = None;
    for bits in 1u64..(1u64 << nv) {
        let x = BitVector::from_u64(nv, bits);
        if !a.mul_vector(&x).unwrap().is_zero() { continue; }
        if span.contains(&x) { continue; }
        let w = x.weight();
        if best.is_none() || w < best.unwrap() { best = Some(w); }
    }
    best
}

#[test]
fn full_r4_pass() {
    let start = Instant::now();
    let mut total = 0u32;
    let mut k_pos = 0u32;
    let mut checked = 0u32;
    for r in 1..=4usize {
        for n in (2..=((1usize << r) - 1).min(14)).step_by(2) {
            if n < r { continue; }
            for spec in enumerate_full_rank_specs(r, n) {
                total += 1;
                let p = quantum_params(&spec, None).unwrap();
                if p.logical_qubits == 0 { continue; }
                k_pos += 1;
                let g = CayleyGraph::build(spec.clone()).unwrap();
                let oracle = oracle_min_d(&g);
                assert_eq!(p.quantum_d, oracle, "mismatch on {:?}", spec.column_codes());
                checked += 1;
            }
        }
    }
    println!("total {total}, K>0 {k_pos}, oracle-checked {checked}, elapsed {:?}", start.elapsed());
}
