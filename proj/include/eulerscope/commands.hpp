#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "eulerscope/error.hpp"
#include "eulerscope/triplet.hpp"

namespace eulerscope {

/// Process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitInternal = 1,   // unexpected failure, I/O errors
    kExitUsage = 2,      // bad configuration, arguments, ordering, locked output
    kExitNumerical = 3,  // numerical failure or failed verification checks
    kExitCorrupt = 4,    // corrupt snapshot or series input
};

int exit_code_for(ErrorKind kind);

/// Environment variable that relocates every output directory.
inline constexpr const char* kOutputRootEnv = "EULERSCOPE_OUTPUT_ROOT";

/// With EULERSCOPE_OUTPUT_ROOT set, relative paths resolve against it and
/// absolute ones keep only their last component under it.
std::filesystem::path resolve_output_dir(const std::string& configured);

/// Exclusive marker file `.eulerscope.lock` in an output directory.
/// Errors: Config when another process holds the lock, Io otherwise.
class OutputLock {
public:
    explicit OutputLock(const std::filesystem::path& dir);
    ~OutputLock();
    OutputLock(const OutputLock&) = delete;
    OutputLock& operator=(const OutputLock&) = delete;

private:
    std::filesystem::path path_;
};

int cmd_simulate(const std::string& config_path, std::ostream& out, std::ostream& err);

struct AnalyzeOptions {
    /// Snapshot directories (searched together with their snapshots/
    /// subdirectory) or individual files, taken in the given order.
    std::vector<std::string> inputs;
    std::optional<Interval> triplet;
    std::string output;  // empty: <first input directory>/analysis
};

int cmd_analyze(const AnalyzeOptions& options, std::ostream& out, std::ostream& err);

int cmd_verify(const std::string& suite, std::size_t n, std::uint64_t seed, std::ostream& out, std::ostream& err);

int cmd_report(const std::string& series_path, std::ostream& out, std::ostream& err);

}  // namespace eulerscope
