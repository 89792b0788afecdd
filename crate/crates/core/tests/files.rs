use foambound::instance::Instance;
use foambound::meshcheck::{fixtures, load_mesh, write_off};
use foambound::Error;

#[test]
fn mesh_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let sphere = fixtures::icosphere::<f64>(4, 1.0).unwrap();
    let off = dir.path().join("sphere.off");
    std::fs::write(&off, write_off(&sphere)).unwrap();
    let back = load_mesh::<f64>(&off).unwrap();
    assert_eq!(back.triangles().len(), 5120);
    assert_eq!(back.triangles(), sphere.triangles());

    let json = dir.path().join("tri.JSON");
    std::fs::write(
        &json,
        r#"{"vertices": [[0,0,0],[1,0,0],[0,1,0]], "triangles": [[0,1,2]]}"#,
    )
    .unwrap();
    assert_eq!(load_mesh::<f32>(&json).unwrap().triangles().len(), 1);

    let empty = dir.path().join("empty.off");
    std::fs::write(&empty, "OFF\n3 0 0\n0 0 0\n1 0 0\n0 1 0\n").unwrap();
    assert!(matches!(load_mesh::<f64>(&empty), Err(Error::Mesh(_))));
    assert!(matches!(
        load_mesh::<f64>(dir.path().join("absent.off")),
        Err(Error::Io(_))
    ));
}

#[test]
fn instance_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inst.json");
    std::fs::write(
        &path,
        r#"{"points": [[0,0,0],[0.5,0,0]], "classes": ["vertex", "face"],
            "domain": {"type": "halfspaces", "planes": [{"normal": [0,0,1], "offset": 2}]}}"#,
    )
    .unwrap();
    let inst = Instance::<f64>::load(&path).unwrap();
    assert_eq!(inst.h(), None);
    let d = inst.distance_matrix().unwrap();
    assert_eq!(d.boundary(0), 2.0);
    let obj = inst.objective(0.0).unwrap();
    assert_eq!(obj.weights()[1], 1.0);
}
