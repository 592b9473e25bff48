use sensevocab::toy::{ToyWordNet, MOUSE_FRAGMENT};
use sensevocab::{parse_wndb, parse_wordnet, ParseError};

#[test]
fn written_directory_parses_to_the_same_graph() {
    let files = ToyWordNet::parse(MOUSE_FRAGMENT).unwrap().to_files();
    let dir = tempfile::tempdir().unwrap();
    files.write_dir(dir.path()).unwrap();
    let from_disk = parse_wordnet(dir.path()).unwrap();
    assert_eq!(from_disk.dump(), parse_wndb(&files).unwrap().dump());
}

#[test]
fn missing_file_is_named() {
    let dir = tempfile::tempdir().unwrap();
    match parse_wordnet(dir.path()) {
        Err(ParseError::MissingFile(p)) => assert!(p.ends_with("data.noun")),
        other => panic!("{other:?}"),
    }
}
