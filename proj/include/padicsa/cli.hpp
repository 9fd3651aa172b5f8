#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace padicsa {

struct JobSpec {
  std::string command;     // decompose, prepare, skolem, translate, evpmin, verify, sample
  std::string input;       // formula or term text; "-" reads stdin
  std::string input_file;  // read the text from this file instead
  std::string against;     // verify: second formula
  std::string domain = "|t| <= |1|";  // evpmin: domain formula
  long prime = 5;
  int work_prec = 16;
  int n = 1;
  long power = 1;
  long window = 4;
  int digits = 6;
  std::string out;  // output path, stdout when empty
  std::uint64_t seed = 1;
  std::size_t samples_per_piece = 100;
};

struct JobResult {
  int status = 0;  // 0 pass, 1 verification failure, 2 unsupported/precision/input, 3 I/O
  nlohmann::json artifact;
};

/// Runs a job on already loaded input text.
JobResult run_job(const JobSpec& job, const std::string& text);

/// Full command line entry point: parses flags, reads input, writes the
/// artifact, returns the exit status.
int cli_main(int argc, char** argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace padicsa
