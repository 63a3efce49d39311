//! Holds the `acceptance` test target. Run it with
//! `cargo test -p krasner-validation --test acceptance`; it prints one
//! PASS/FAIL line per criterion.
