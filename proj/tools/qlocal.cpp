// qlocal: run a session file and report results as JSON, DOT or text.

#include <qlocal/qlocal.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

int main(int argc, char** argv) {
  CLI::App app{"Quiver, path algebra and local structure computations"};
  std::string input;
  std::size_t degree = 5;
  std::string field;
  std::string output = "json";
  std::string out_path;
  bool dot = false;
  bool print = false;
  app.add_option("file", input, "Session file (standard input when omitted)");
  app.add_option("--degree", degree, "Truncation degree for rewriting")->capture_default_str();
  app.add_option("--field", field, "Default field: q or cyclo:m");
  app.add_option("--output", output, "Report format")->check(CLI::IsMember({"json", "dot", "text"}))->capture_default_str();
  app.add_option("--out", out_path, "Write the report to this path");
  app.add_flag("--dot", dot, "Embed DOT graphs of quiver-valued results in the JSON reports");
  app.add_flag("--print", print, "Parse the session and print it back in normal form");
  CLI11_PARSE(app, argc, argv);

  std::string source;
  if (input.empty() || input == "-") {
    source.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(input);
    if (!in) {
      std::cerr << "qlocal: cannot open " << input << "\n";
      return 2;
    }
    source.assign(std::istreambuf_iterator<char>(in), {});
  }

  qlocal::RunOptions opt;
  opt.degree = degree;
  if (!field.empty()) opt.field = field;
  opt.dot = dot;

  qlocal::Session session;
  try {
    session = qlocal::parse_session(source, opt);
  } catch (const qlocal::Error& e) {
    std::cerr << (input.empty() ? "<stdin>" : input) << ":" << e.what() << "\n";
    return 2;
  }

  std::ostringstream report;
  bool ok = true;
  if (print) {
    report << qlocal::print_session(session);
  } else {
    qlocal::RunResult r = qlocal::run_session(session, opt);
    ok = r.ok;
    if (output == "json") {
      report << r.document.dump(2) << "\n";
    } else if (output == "dot") {
      for (const auto& d : r.dots) report << d;
    } else {
      for (const auto& t : r.texts) report << t;
    }
  }

  if (out_path.empty()) {
    std::cout << report.str();
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "qlocal: cannot write " << out_path << "\n";
      return 2;
    }
    out << report.str();
  }
  return ok ? 0 : 1;
}
