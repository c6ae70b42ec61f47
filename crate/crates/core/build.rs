fn main() {
    // lapack-sys only declares the symbols; the system OpenBLAS bundles LAPACK.
    println!("cargo:rustc-link-lib=dylib=openblas");
}
