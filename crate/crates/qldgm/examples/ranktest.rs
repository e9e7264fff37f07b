use qldgm::gf2::BitMatrix;
use qldgm::rng::domain_rng;
use rand::Rng;

fn main() {
    let mut rng = domain_rng(9, 0);
    for trial in 0..200 {
        let rows = 5 + (trial % 40);
        let cols = 5 + (trial * 7 % 60);
        let mut m = BitMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, rng.random_bool(0.15));
            }
        }
        // make some unit rows
        for r in 0..rows.min(6) {
            let mut clear = m.row(r);
            for c in clear.iter_ones().collect::<Vec<_>>() { m.set(r, c, false); }
            let _ = clear;
            m.set(r, (r * 3) % cols, true);
        }
        let fast = m.rank();
        let slow = m.row_echelon().1.len();
        if fast != slow {
            println!("MISMATCH trial {trial}: fast {fast} slow {slow} ({rows}x{cols})");
            return;
        }
    }
    println!("rank OK on 200 matrices");
}
