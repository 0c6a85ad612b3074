mod common;

use common::{h3, verify, with_points, MUTATIONS};
use metallift::verify::{Mode, Status};

#[test]
fn every_single_entry_mutation_is_caught() {
    for (name, f) in MUTATIONS {
        let mut m = with_points(h3(), 3, Mode::Exact);
        f(&mut m);
        let r = verify(&m, &[]);
        let failing: Vec<_> = r.suites.iter().filter(|s| s.status == Status::Fail).map(|s| s.id).collect();
        assert!(!failing.is_empty(), "mutation {name} went unnoticed");
    }
}
