#pragma once
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dlab::cli {

enum Exit { Ok = 0, Usage = 1, Counterexample = 2, Guard = 3 };

struct JobConfig {
    std::string command;
    std::vector<std::string> inputs;
    std::string ring = "F_3";
    std::string target;  // family-scan: field of the sample points
    std::string shape = "linear:2:1";
    std::string mode = "sample";  // mazur-scan: sample | teich
    int level = 2;
    std::uint64_t seed = 0;
    std::uint64_t limit = 10'000'000;
    std::uint64_t samples = 1000;
    std::string out;
    std::string format = "json";
};

// each command writes to `os`; the return value is the exit code
int cmd_witt(const JobConfig& c, std::ostream& os);
int cmd_classify(const JobConfig& c, std::ostream& os);
int cmd_newton(const JobConfig& c, std::ostream& os);
int cmd_mazur_scan(const JobConfig& c, std::ostream& os);
int cmd_family_scan(const JobConfig& c, std::ostream& os);
int cmd_flex(const JobConfig& c, std::ostream& os);
int cmd_gauge_validate(const JobConfig& c, std::ostream& os);

}  // namespace dlab::cli
