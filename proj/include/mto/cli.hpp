#pragma once

namespace mto {

// Full command-line front end. Returns the process exit code: 0 on success,
// nonzero with a one-line `error: ...` message on stderr otherwise.
int cli_main(int argc, char** argv);

} // namespace mto
