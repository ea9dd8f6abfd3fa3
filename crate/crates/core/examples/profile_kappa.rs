use std::time::Instant;
use ramcover::ideal;
fn main() {
    let field = ramcover::NumberField::quadratic(-1);
    let t0 = Instant::now();
    let ideals = ideal::enumerate_ideals(&field, 10_000);
    println!("enum: {:?} ({})", t0.elapsed(), ideals.len());
    let t0 = Instant::now();
    for i in &ideals { let _ = ideal::reduced_basis(i); }
    println!("bases: {:?}", t0.elapsed());
    let t0 = Instant::now();
    for i in &ideals { let _ = ideal::reduced_generator(i); }
    println!("generators: {:?}", t0.elapsed());
    let t0 = Instant::now();
    for i in &ideals {
        if i.norm() > ramcover::rat::int(1) {
            let x = field.from_coords(&(i.norm() + ramcover::rat::int(7)), &ramcover::rat::int(3));
            let _ = ideal::reduced_residue(&x, i);
        }
    }
    println!("residues: {:?}", t0.elapsed());
    let t0 = Instant::now();
    for place in ideal::places_up_to(&field, 10_000) {
        let _ = ideal::primitive_element(&place);
    }
    println!("primitives: {:?}", t0.elapsed());
}
