fn main() {
    let store = plethys::macdonald::TableStore::new();
    let t = store.table(2).unwrap();
    for (i, mu) in t.parts.iter().enumerate() {
        println!("H~_{} in p: {}", mu, t.h_p[i].to_text());
        println!("H~_{} in s: {}", mu, t.h_p[i].convert(plethys::symfunc::Basis::S).to_text());
        println!("J_{} in m: {}", mu, t.j_m[i].to_text());
    }
    let t1 = store.table(1).unwrap();
    println!("H~_[1] p: {}", t1.h_p[0].to_text());
}
