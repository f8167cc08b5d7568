#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mcera::cli {

// Full command-line front end. Returns the process exit code: 0 on success,
// 1 on I/O or check failures, 2 on usage errors. The streams are injectable
// so tests can compare outputs byte-for-byte.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);
int run(int argc, char** argv);

}  // namespace mcera::cli
