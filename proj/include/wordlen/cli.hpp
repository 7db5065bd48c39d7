#pragma once

#include <ostream>

namespace wordlen {

/// Entry point of the `wordlen` command. Exit codes: 0 success, 1 usage
/// error (synopsis on `err`), 2 data error (diagnostic on `err`).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wordlen
