use finloop::clone::binary_term_clone;
use finloop::groups::builtin;
use finloop::loops::central_extension;

fn main() {
    let cases: Vec<(&str, finloop::FiniteLoop)> = vec![
        ("Z8", builtin::cyclic(8)),
        ("D8", builtin::dihedral(4)),
        ("Q8", builtin::quaternion8()),
        ("ext8", central_extension(&builtin::cyclic(4), 2, |x, y| usize::from((x, y) == (1, 1))).unwrap()),
    ];
    for (name, l) in cases {
        for cap in [1000usize, 10_000, 50_000] {
            let t = std::time::Instant::now();
            match binary_term_clone(&l, cap) {
                Ok(set) => {
                    println!("{name}: clone size {} in {:?}", set.len(), t.elapsed());
                    break;
                }
                Err(e) => println!("{name}: cap {cap}: {e} in {:?}", t.elapsed()),
            }
        }
    }
}
