// endgraph: a calculator for end spaces of locally finite graphs given as
// signature expressions.

#include <atomic>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "endgraph/api.hpp"

namespace {

const char* kUsage = R"(usage: endgraph <command> [args] [options]

commands:
  parse <expr>                  parse and echo the canonical text
  normalize <expr>              rewrite to the canonical normal form
  stable <expr>                 stability verdict with witness
  self-similar <expr>           self-similarity verdict
  decompose <expr>              canonical wedge decomposition
  endspace <expr>               end-space summary (genus, MS form, flags)
  genus <expr>                  genus class
  max-ends <expr>               maximal end types with multiplicities
  types <expr> [<z>]            type census, or membership of type z
  compare <a> <b>               order and isomorphism between structures
  iso <a> <b>                   isomorphism with separating invariant
  embeds <a> <b>                clopen embedding of end spaces
  successor <expr> [one|cantor] immediate successor local structure
  mub <a> <b> [...] [one|cantor] minimal upper bound
  gcd <expr>                    gcd witness search over maximal ends
  classify-maps <expr>          dense conjugacy class in Maps(X)
  classify-homeo <expr>         dense conjugacy class in Homeo(end space)
  flux <model> <action>         flux value (model: unit|fig-xn|file.json)
  oracle endspace <expr>        independent end-space computation
  oracle embed-check <a> <b> [d] depth-bounded embedding probe
  atlas [path] [--check]        bundled graph atlas

options:
  --json          machine output
  --trace         include applied-rule / decision traces
  --batch         read expressions from stdin, one per line
  --jobs N        parallel batch classification (order-preserving)

exit codes: classify verdicts use 0=Yes 1=No 2=Unknown; 64 usage,
65 parse error, 70 internal error.
)";

struct Options {
  bool json = false;
  bool trace = false;
  bool batch = false;
  int jobs = 1;
  std::string command;
  std::vector<std::string> args;
};

int runOne(const Options& opt) {
  nlohmann::json out = endgraph::api::run(opt.command, opt.args, opt.trace);
  if (opt.json)
    std::cout << out.dump() << "\n";
  else
    std::cout << endgraph::api::renderText(out);
  return endgraph::api::exitCode(out);
}

int runBatch(const Options& opt) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(std::cin, line))
    if (!line.empty()) lines.push_back(line);
  std::vector<std::string> results(lines.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= lines.size()) break;
      Options one = opt;
      one.args.insert(one.args.begin(), lines[i]);
      nlohmann::json out;
      try {
        out = endgraph::api::run(one.command, one.args, one.trace);
      } catch (const std::exception& e) {
        out = {{"command", one.command}, {"input", lines[i]}, {"error", e.what()}};
      }
      results[i] = opt.json ? out.dump()
                            : lines[i] + "  =>  " +
                                  (out.contains("answer")
                                       ? out["answer"].get<std::string>() +
                                             (out.contains("theorem")
                                                  ? " (" + out["theorem"].get<std::string>() + ")"
                                                  : "")
                                       : out.dump());
    }
  };
  int jobs = std::max(1, opt.jobs);
  std::vector<std::thread> pool;
  for (int i = 1; i < jobs; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& r : results) std::cout << r << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--json") {
      opt.json = true;
    } else if (a == "--trace") {
      opt.trace = true;
    } else if (a == "--batch") {
      opt.batch = true;
    } else if (a == "--jobs") {
      if (i + 1 >= argc) {
        std::cerr << "--jobs needs a number\n";
        return 64;
      }
      opt.jobs = std::atoi(argv[++i]);
    } else if (a == "--help" || a == "-h") {
      std::cout << kUsage;
      return 0;
    } else if (opt.command.empty()) {
      opt.command = a;
    } else {
      opt.args.push_back(a);
    }
  }
  if (opt.command.empty()) {
    std::cerr << kUsage;
    return 64;
  }
  try {
    return opt.batch ? runBatch(opt) : runOne(opt);
  } catch (const endgraph::api::CommandError& e) {
    nlohmann::json err = {{"command", opt.command}, {"error", e.what()}};
    if (opt.json)
      std::cerr << err.dump() << "\n";
    else
      std::cerr << "error: " << e.what() << "\n";
    return e.exitCode;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
}
