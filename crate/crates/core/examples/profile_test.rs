use std::time::Instant;
fn main() {
    let field = ramcover::NumberField::quadratic(-1);
    let t0 = Instant::now();
    let taus = ramcover::field::enumerate_integers(&field, &ramcover::rat::rat(20));
    println!("enumerate(20): {} elements in {:?}", taus.len(), t0.elapsed());
    let t0 = Instant::now();
    let places = ramcover::ideal::places_up_to(&field, 400);
    println!("places: {} in {:?}", places.len(), t0.elapsed());
    // valuation cost at a split place
    let p = places.iter().find(|v| v.p == 397).unwrap();
    let t0 = Instant::now();
    let mut acc = 0i64;
    for tau in &taus {
        if !tau.is_zero() {
            acc += p.valuation(tau);
        }
    }
    println!("valuations at 397: acc={} in {:?}", acc, t0.elapsed());
}
