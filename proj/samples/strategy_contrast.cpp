// Prints the Cb/Cf trace of the second bundled fragment under the canonical
// and the functional ranking, side by side.

#include <fstream>
#include <iostream>
#include <sstream>

#include "centerline/centerline.hpp"

static std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int main() {
  using namespace centerline;
  auto corpus = parse_corpus(slurp(CENTERLINE_DATA_DIR "/fragments.json"));
  auto kb = parse_kb(slurp(CENTERLINE_DATA_DIR "/domain.kb"));
  for (Strategy s : {Strategy::Canonical, Strategy::Functional}) {
    std::cout << render_trace_text(run_discourse(corpus.at(1), kb, s, ResolutionMode::Gold)) << "\n";
  }
}
