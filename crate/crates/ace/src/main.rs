// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ACE Forum Authors

fn main() {
    let code = ace::cli::run(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::exit(code);
}
