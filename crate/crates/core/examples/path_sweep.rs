//! Matching statistics of the path sweep from every start edge.

use query_commit::exact::path_dp_probs;

fn main() {
    let p = [0.6, 0.3, 0.9, 0.5, 0.7];
    println!("start  E|M|    Pr(head) Pr(tail) Pr(both)");
    for a in 1..=p.len() {
        let r = path_dp_probs(&p, a);
        println!(
            "{a:>5}  {:.4}  {:.4}   {:.4}   {:.4}",
            r.expected_size, r.pr_u1, r.pr_uq1, r.pr_both
        );
    }
}
