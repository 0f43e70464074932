#ifndef REVSPAM_TESTS_SUPPORT_FIXTURES_H_
#define REVSPAM_TESTS_SUPPORT_FIXTURES_H_

#include <filesystem>
#include <string>

#include "revspam/lexicons.h"
#include "revspam/ontology.h"
#include "revspam/preprocess.h"

namespace revspam::testing {

std::filesystem::path DataDir();
std::filesystem::path OntologyPath();
std::filesystem::path LexiconDir();

// Loaded once per process.
const Ontology &FixtureOntology();
const LexiconSet &FixtureLexicons();

// First record of data/examples/<name>.
Review ExampleReview(const std::string &name);

// Fresh scratch directory under the system temp dir.
std::filesystem::path ScratchDir(const std::string &tag);

}  // namespace revspam::testing

#endif  // REVSPAM_TESTS_SUPPORT_FIXTURES_H_
