#include "debatesim/core/corpus.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace debatesim {

const std::vector<Topic>& bundled_topics() {
  static const std::vector<Topic> topics = {
      {"culture-01", "Culture", "We should make all museums free of charge"},
      {"culture-02", "Culture", "We should return cultural property to its place of origin"},
      {"culture-03", "Culture", "We should ban beauty contests"},
      {"culture-04", "Culture", "Tourism is a viable development strategy for poor states"},
      {"culture-05", "Culture", "We should restrict advertising aimed at children"},
      {"culture-06", "Culture", "Science is a threat to humanity"},
      {"culture-07", "Culture", "Gay couples should not be allowed to adopt kids"},
      {"culture-08", "Culture", "We should ban gambling"},
      {"culture-09", "Culture", "The feminist movement should seek a ban on pornography"},
      {"digital-01", "Digital Freedoms", "The internet encourages democracy"},
      {"digital-02", "Digital Freedoms", "The internet brings more harm than good"},
      {"digital-03", "Digital Freedoms", "We should allow electronic and internet voting in elections"},
      {"digital-04", "Digital Freedoms", "Internet access is a human right"},
      {"digital-05", "Digital Freedoms", "We should block social messaging networks during riots"},
      {"digital-06", "Digital Freedoms", "Companies should not collect/sell personal data of clients"},
      {"digital-07", "Digital Freedoms", "We should ban targeted online advertising"},
      {"digital-08", "Digital Freedoms", "Politicians have no right to privacy"},
      {"digital-09", "Digital Freedoms", "We should ban Digital Rights Management technologies"},
      {"digital-10", "Digital Freedoms", "We should block websites that deny the Holocaust"},
      {"education-01", "Education", "This house supports single-race public schools"},
      {"education-02", "Education", "Welfare benefits should be tied to children's attendance"},
      {"education-03", "Education", "University education should be free"},
      {"education-04", "Education", "History has no place in the classroom"},
      {"education-05", "Education", "We should make sex education mandatory in schools"},
      {"environment-01", "Environment", "Animals have rights"},
      {"environment-02", "Environment", "People should not keep pets"},
      {"environment-03", "Environment", "States should not subsidise the growing of tobacco"},
      {"environment-04", "Environment", "We are too late on global climate change"},
      {"environment-05", "Environment", "Wind power should be a primary focus of future energy supply"},
      {"environment-06", "Environment", "Endangered species should be protected"},
      {"health-01", "Health", "The USA should increase funding to fight disease in developing nations"},
      {"health-02", "Health", "We should punish parents who smoke near their children"},
      {"health-03", "Health", "We should ban alcohol"},
      {"health-04", "Health", "We should ban junk food from schools"},
      {"health-05", "Health", "Employees should disclose their HIV status to employers"},
      {"health-06", "Health", "Assisted suicide should be legalized"},
      {"international-01", "International", "We should use force to protect human rights abroad"},
      {"international-02", "International", "We should expand NATO"},
      {"international-03", "International", "Democracy can be built through interventions"},
      {"international-04", "International", "Sanctions should be used to promote democracy"},
      {"philosophy-01", "Philosophy", "Parents should be able to choose the sex of their children"},
      {"philosophy-02", "Philosophy", "The use of atomic bombs on Hiroshima and Nagasaki was justified"},
      {"philosophy-03", "Philosophy", "Sperm and egg donors should retain their anonymity"},
      {"politics-01", "Politics", "Federal states are better than unitary nations"},
      {"politics-02", "Politics", "We should introduce positive discrimination for women in parliament"},
      {"politics-03", "Politics", "Countries should have quotas for women in politics"},
      {"politics-04", "Politics", "All nations have a right to nuclear weapons"},
      {"politics-05", "Politics", "We should introduce recall elections"},
      {"politics-06", "Politics", "We should negotiate with terrorists"},
      {"politics-07", "Politics", "We should lower the voting age to 16"},
      {"religion-01", "Religion", "We should legalize polygamy"},
      {"religion-02", "Religion", "We should allow gay couples to marry"},
      {"society-01", "Society", "We should support international adoption"},
      {"society-02", "Society", "Governments should prioritise spending on youth"},
      {"sport-01", "Sport", "Media should promote women's sport equally to men's sport"},
      {"cmv-01", "CMV", "Suicide should be a human right"},
      {"cmv-02", "CMV", "The US should strictly enforce border security"},
      {"cmv-03", "CMV", "Drunk driving should not be a crime itself"},
      {"cmv-04", "CMV", "Child raising should not belong to biological parents"},
      {"cmv-05", "CMV", "Non-mandatory voting is a good thing"},
      {"cmv-06", "CMV", "Gun control should not be implemented"},
      {"cmv-07", "CMV", "No one over 80 should serve in government"},
      {"cmv-08", "CMV", "Hate speech is free speech"},
  };
  return topics;
}

void validate_corpus(const std::vector<Topic>& topics) {
  if (topics.empty()) throw InvalidConfig("corpus is empty");
  std::set<std::string> ids;
  for (const auto& t : topics) {
    if (t.id.empty()) throw InvalidConfig("topic with empty id");
    if (t.proposition.empty()) throw InvalidConfig("topic '" + t.id + "' has no proposition");
    if (!ids.insert(t.id).second) throw InvalidConfig("duplicate topic id '" + t.id + "'");
  }
}

std::vector<Topic> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed corpus file " + path.string() + ": " + e.what());
  }
  std::vector<Topic> topics;
  try {
    for (const auto& item : doc.at("topics")) {
      topics.push_back(Topic{item.at("id").get<std::string>(),
                             item.value("domain", std::string{}),
                             item.at("proposition").get<std::string>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed corpus file " + path.string() + ": " + e.what());
  }
  validate_corpus(topics);
  return topics;
}

}  // namespace debatesim
