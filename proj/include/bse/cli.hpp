#pragma once

namespace bse::cli {

/// Entry point for the `bse` command-line tool. Returns the process exit
/// code: 0 on success, 2 on usage errors, and a distinct code per domain
/// error class (documented in --help).
int run(int argc, char** argv);

}  // namespace bse::cli
