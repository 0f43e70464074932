#include "support/fixtures.h"

#include <atomic>
#include <unistd.h>

#include "revspam/corpus_io.h"

namespace revspam::testing {

std::filesystem::path DataDir() { return REVSPAM_DATA_DIR; }
std::filesystem::path OntologyPath() { return DataDir() / "phone_hotel.ont"; }
std::filesystem::path LexiconDir() { return DataDir() / "lexicons"; }

const Ontology &FixtureOntology() {
  static const Ontology ontology = LoadOntology(OntologyPath());
  return ontology;
}

const LexiconSet &FixtureLexicons() {
  static const LexiconSet lex = LoadLexicons(LexiconDir());
  return lex;
}

Review ExampleReview(const std::string &name) {
  return LoadCorpus(DataDir() / "examples" / name).reviews.at(0);
}

std::filesystem::path ScratchDir(const std::string &tag) {
  static std::atomic<int> counter{0};
  auto dir = std::filesystem::temp_directory_path() /
             ("revspam_" + tag + "_" + std::to_string(::getpid()) + "_" +
              std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace revspam::testing
