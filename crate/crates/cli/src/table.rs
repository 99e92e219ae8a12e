use betweenness::BcVector;

/// `vertex\tbc` header, then one row per vertex with 9 decimals.
pub fn format_table(scores: &BcVector) -> String {
    let mut out = String::from("vertex\tbc\n");
    for (v, x) in scores.iter().enumerate() {
        out.push_str(&format!("{v}\t{x:.9}\n"));
    }
    out
}

/// 64-bit FNV-1a of the formatted table.
pub fn checksum(scores: &BcVector) -> u64 {
    format_table(scores)
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}
