use qldgm::code::build_doped_m;
use qldgm::rng::domain_rng;

fn main() {
    let mut rng = domain_rng(123, 0);
    let mut deficient = 0;
    for trial in 0..20 {
        let dm = build_doped_m(38, 50, 3, 15, &mut rng).unwrap();
        let rank = dm.matrix().rank();
        if rank != 38 {
            deficient += 1;
            if trial < 3 {
                println!("trial {trial}: rank {rank} / 38");
            }
        }
    }
    println!("{deficient}/20 deficient");
}
