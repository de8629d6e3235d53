//! When is a loop of length `c` with angle defect `eps` an embedded
//! quasigeodesic? The margin `(π − eps)/2 − arcsin(1/cosh(c/2))` must be
//! positive.

use trifol::isoperimetric::quasigeodesic_margin;

fn main() {
    let eps = [0.0, 0.5, 1.0, 2.0, 3.0];
    print!("{:>8}", "c \\ eps");
    for e in eps {
        print!("{e:>10.2}");
    }
    println!();
    for c in [1e-6, 0.1, 0.5, 1.0, 2.0, 4.0, 8.0] {
        print!("{c:>8}");
        for e in eps {
            let (m, ok) = quasigeodesic_margin(c, e).expect("in domain");
            print!("{:>9.4}{}", m, if ok { '+' } else { ' ' });
        }
        println!();
    }
    // Near c = 0 the margin at eps = 0 behaves like c/2 and stays positive.
    for c in [1e-3, 1e-6, 1e-9] {
        println!("margin({c:e}, 0) = {:e}", quasigeodesic_margin(c, 0.0).unwrap().0);
    }
    println!("{:?}", quasigeodesic_margin(0.0, 0.0));
}
