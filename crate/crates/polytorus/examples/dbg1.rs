use polytorus::lattice::{make_named, FamilyParams, LatticeFamily};
use polytorus::surd::{surd_int, Surd};
use polytorus::torus::{quotient, QuotientOptions};

fn main() {
    for a in [7i128, 11, 12] {
        let l = make_named(LatticeFamily::Cubic, FamilyParams::Scale(surd_int(a))).unwrap();
        let t = std::time::Instant::now();
        let out = quotient("{6,4|4}", &l, &QuotientOptions::default()).unwrap();
        println!("a={a}: accepted={} V={} flags={} [{:?}]", out.verdict.accepted, out.verdict.counts.v, out.verdict.counts.flags, t.elapsed());
    }
    let _ = Surd::ONE;
}
