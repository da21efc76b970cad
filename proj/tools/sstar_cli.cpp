// Command-line front door over the C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sstar.h"

namespace {

struct Options {
  std::string kind;
  std::string in;
  std::string out;
  std::string first;
  std::string certificate;
  std::uint64_t budget = 10'000'000;
  std::uint64_t seed = 1;
  std::uint64_t size = 0;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir;
  std::string persist;
};

bool read_input(const std::string& path, std::string& text) {
  if (path.empty() || path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
    return true;
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) return false;
  text.assign(std::istreambuf_iterator<char>(f), {});
  return true;
}

bool write_text(const std::string& path, const std::string& text) {
  std::string body = text;
  if (!body.empty() && body.back() != '\n') body += '\n';
  if (path.empty() || path == "-") {
    std::cout << body;
    return static_cast<bool>(std::cout);
  }
  std::ofstream f(path, std::ios::binary);
  f << body;
  return static_cast<bool>(f);
}

class Context {
 public:
  explicit Context(const Options& o) : ctx_(sstar_context_new()) {
    sstar_context_set_budget(ctx_, o.budget);
    sstar_context_set_seed(ctx_, o.seed);
  }
  ~Context() { sstar_context_free(ctx_); }
  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;
  sstar_context* get() { return ctx_; }

 private:
  sstar_context* ctx_;
};

int report(sstar_context* ctx, sstar_status status) {
  if (status != SSTAR_OK) {
    std::cerr << "error (" << sstar_status_name(status) << "): " << sstar_last_error(ctx) << "\n";
  }
  return status;
}

// Shared tail of the file-to-file commands.
template <typename Call>
int file_command(const Options& o, Call&& call) {
  std::string input;
  if (!read_input(o.in, input)) {
    std::cerr << "error (io-error): cannot read " << o.in << "\n";
    return SSTAR_E_IO;
  }
  Context ctx(o);
  sstar_status st = call(ctx.get(), input);
  if (st != SSTAR_OK) return report(ctx.get(), st);
  if (!write_text(o.out, sstar_output(ctx.get()))) {
    std::cerr << "error (io-error): cannot write " << o.out << "\n";
    return SSTAR_E_IO;
  }
  if (!o.certificate.empty()) {
    std::string cert = sstar_certificate(ctx.get());
    if (cert.empty()) cert = "{}";
    if (!write_text(o.certificate, cert)) {
      std::cerr << "error (io-error): cannot write " << o.certificate << "\n";
      return SSTAR_E_IO;
    }
  }
  return SSTAR_OK;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Superstars, Paint Can, EPMX and Blackout workbench"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--budget", o.budget, "Search node budget")->capture_default_str();
  app.add_option("--seed", o.seed, "Seed for randomized commands")->capture_default_str();

  auto add_io = [&](CLI::App* cmd) {
    cmd->add_option("--in", o.in, "Input file (default stdin)");
    cmd->add_option("--out", o.out, "Output file (default stdout)");
  };

  auto* reduce = app.add_subcommand("reduce", "Run a reduction");
  reduce->add_option("kind", o.kind, "Reduction")
      ->required()
      ->check(CLI::IsMember({"normalize-3sat", "3sat-to-epmx", "epmx-to-stars", "stars-to-comets",
                             "setcover-to-pure", "pure-to-blackout"}));
  add_io(reduce);
  reduce->add_option("--certificate", o.certificate, "Write the reduction certificate here");

  auto* solve = app.add_subcommand("solve", "Print the outcome class or the winner");
  solve->add_option("kind", o.kind, "Game")->required()->check(CLI::IsMember({"stars", "epmx", "blackout", "paintcan"}));
  add_io(solve);
  solve->add_option("--first", o.first, "Player moving first: left|right|X|Y|AllOff|OneOn");

  auto* oracle = app.add_subcommand("oracle", "Brute-force checkers");
  oracle->add_option("kind", o.kind, "Oracle")
      ->required()
      ->check(CLI::IsMember({"sat", "restricted", "min-cover", "cover", "exact-cover"}));
  add_io(oracle);

  auto* bench = app.add_subcommand("bench", "Timing benchmarks");
  bench->add_option("kind", o.kind, "Benchmark")->required()->check(CLI::IsMember({"nimsum", "gf2", "solver"}));
  bench->add_option("--size", o.size, "Workload size (0 = default)");
  bench->add_option("--out", o.out, "Output file (default stdout)");

  auto* serve = app.add_subcommand("serve", "Start the HTTP game service");
  serve->add_option("--host", o.host, "Bind address")->capture_default_str();
  serve->add_option("--port", o.port, "Port")->capture_default_str();
  serve->add_option("--static", o.static_dir, "Directory served at /");
  serve->add_option("--persist", o.persist, "Append-only session log");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : SSTAR_E_USAGE;
  }

  if (reduce->parsed()) {
    return file_command(o, [&](sstar_context* c, const std::string& in) {
      return sstar_reduce(c, o.kind.c_str(), in.c_str());
    });
  }
  if (solve->parsed()) {
    return file_command(o, [&](sstar_context* c, const std::string& in) {
      return sstar_solve(c, o.kind.c_str(), in.c_str(), o.first.empty() ? nullptr : o.first.c_str());
    });
  }
  if (oracle->parsed()) {
    return file_command(o, [&](sstar_context* c, const std::string& in) {
      return sstar_oracle(c, o.kind.c_str(), in.c_str());
    });
  }
  if (bench->parsed()) {
    Context ctx(o);
    sstar_status st = sstar_bench(ctx.get(), o.kind.c_str(), o.size);
    if (st != SSTAR_OK) return report(ctx.get(), st);
    return write_text(o.out, sstar_output(ctx.get())) ? 0 : SSTAR_E_IO;
  }
  Context ctx(o);
  std::cerr << "serving on http://" << o.host << ":" << o.port << "\n";
  return report(ctx.get(), sstar_serve(ctx.get(), o.host.c_str(), o.port,
                                       o.static_dir.empty() ? nullptr : o.static_dir.c_str(),
                                       o.persist.empty() ? nullptr : o.persist.c_str()));
}
