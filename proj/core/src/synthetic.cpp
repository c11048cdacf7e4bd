#include "hyperrag/synthetic.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <string_view>
#include <unordered_set>

namespace hyperrag {
namespace {

struct Lexicon {
  std::string_view dim;
  std::vector<std::string_view> phrases;
};

const std::vector<Lexicon>& lexicons() {
  static const std::vector<Lexicon> kLexicons = {
      {"LOCATION",
       {"Melbourne Beach", "Florida", "Gulf of Mexico", "New Orleans", "Louisiana", "Texas", "Puerto Rico",
        "North Carolina", "Cape Hatteras", "Miami", "Tampa Bay", "Galveston", "Mobile Bay", "Atlantic",
        "Caribbean", "Bahamas", "Cuba", "Jamaica", "Yucatan Peninsula", "Chesapeake Bay", "Outer Banks",
        "Key West", "Houston", "Charleston", "Savannah", "Pensacola", "Biloxi", "Corpus Christi", "Virginia",
        "Georgia", "Alabama", "Mississippi", "South Carolina", "New Jersey", "Long Island", "Bermuda", "Haiti",
        "Honduras", "Nicaragua", "Lake Okeechobee"}},
      {"DATE",
       {"August 2008", "September 2008", "June 2005", "August 2005", "October 2012", "September 2017",
        "August 2017", "October 2018", "September 2019", "August 1992", "September 2004", "October 2005",
        "June 2010", "July 2011", "November 2020", "September 2022", "August 2021", "October 2016",
        "September 2018", "August 2011"}},
      {"EVENT",
       {"Hurricane Katrina", "Hurricane Andrew", "Hurricane Sandy", "Hurricane Harvey", "Hurricane Irma",
        "Hurricane Maria", "Hurricane Michael", "Hurricane Ike", "Hurricane Rita", "Hurricane Wilma",
        "Tropical Storm Fay", "Tropical Storm Allison", "Hurricane Gustav", "Hurricane Florence",
        "Hurricane Dorian", "Hurricane Ian", "Hurricane Ivan", "Hurricane Charley", "Hurricane Matthew",
        "Hurricane Irene", "Hurricane Hugo", "Tropical Storm Arthur", "Hurricane Laura", "Hurricane Ida",
        "Hurricane Opal"}},
      {"ORGANIZATION",
       {"National Hurricane Center", "NOAA", "Climate Prediction Center", "NASA", "FEMA",
        "Army Corps of Engineers", "National Weather Service", "Jet Propulsion Laboratory", "Red Cross", "USGS",
        "Colorado State University", "University of Miami", "National Science Foundation", "Met Office",
        "World Meteorological Organization"}},
      {"PERSON",
       {"Bill Patzert", "Gerry Bell", "Kerry Emanuel", "Phil Klotzbach", "Chris Landsea", "Max Mayfield",
        "James Franklin", "Robbie Berg", "Stacy Stewart", "Lixion Avila", "Jamie Rhome", "Ken Graham",
        "Rick Knabb", "Greg Holland", "Judith Curry"}},
      {"THEME",
       {"rain", "rainfall", "storm surge", "hurricane season", "wind shear", "sea surface temperature",
        "coastal erosion", "flooding", "evacuation", "rapid intensification", "landfall", "hurricane track",
        "rainfall intensity", "climate change", "ocean warming", "wind speed", "power outage", "levee failure",
        "beach erosion", "tropical cyclone", "saharan dust", "el nino", "la nina", "accumulated cyclone energy",
        "hurricane forecast", "storm track", "barrier island", "wetland loss", "sea level rise", "property damage",
        "insured losses", "mangrove forest", "coral reef", "saltwater intrusion", "tornado", "dune", "seawall",
        "emergency response", "satellite imagery", "hurricane hunter"}},
  };
  return kLexicons;
}

constexpr std::array<std::string_view, 64> kFiller = {
    "researchers", "observed",   "data",      "model",      "scientists", "study",       "results",
    "showed",      "measurements", "coast",   "region",     "water",      "impact",      "analysis",
    "increase",    "during",     "between",   "higher",     "lower",      "significant", "estimated",
    "recorded",    "reported",   "said",      "professor",  "team",       "new",         "findings",
    "conditions",  "patterns",   "changes",   "years",      "decades",    "community",   "residents",
    "officials",   "the",        "of",        "and",        "in",         "a",           "was",
    "were",        "to",         "with",      "for",        "that",       "by",          "on",
    "after",       "its",        "which",     "record",     "forecasters", "gauges",     "inches",
    "miles",       "hours",      "local",     "average",    "peak",       "track",       "system",
    "near"};

std::size_t bounded(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

std::vector<std::string_view> safe_filler(const Gazetteer& g) {
  std::unordered_set<std::string> starts;
  for (const auto& [dim, phrases] : g.entries()) {
    for (const auto& p : phrases) starts.insert(p.substr(0, p.find(' ')));
  }
  std::vector<std::string_view> out;
  for (auto w : kFiller) {
    if (!starts.contains(std::string(w))) out.push_back(w);
  }
  return out;
}

}  // namespace

Gazetteer hurricane_gazetteer() {
  Gazetteer g;
  for (const auto& lex : lexicons()) {
    const Dimension dim{std::string(lex.dim)};
    for (auto p : lex.phrases) g.add(dim, p);
  }
  return g;
}

SyntheticDomain make_hurricane_domain(std::size_t num_docs, std::size_t num_queries, std::uint64_t seed) {
  SyntheticDomain out{Corpus{}, hurricane_gazetteer(), {}};
  const std::vector<std::string_view> filler = safe_filler(out.gazetteer);
  std::mt19937_64 rng(seed);

  // Per dimension: probability (percent) of carrying at least one label.
  constexpr std::array<std::size_t, 6> kPresence = {95, 50, 80, 45, 35, 100};

  for (std::size_t d = 0; d < num_docs; ++d) {
    std::vector<std::string_view> mentions;
    const auto& lex = lexicons();
    for (std::size_t li = 0; li < lex.size(); ++li) {
      if (bounded(rng, 100) >= kPresence[li]) continue;
      const std::size_t labels = 1 + bounded(rng, li == 5 ? 3 : 2);
      for (std::size_t l = 0; l < labels; ++l) {
        const std::string_view phrase = lex[li].phrases[bounded(rng, lex[li].phrases.size())];
        const std::size_t repeats = 1 + bounded(rng, 3);
        for (std::size_t r = 0; r < repeats; ++r) mentions.push_back(phrase);
      }
    }
    std::shuffle(mentions.begin(), mentions.end(), rng);

    std::string text;
    std::size_t m = 0;
    const std::size_t sentences = std::max<std::size_t>(mentions.size(), 4 + bounded(rng, 10));
    for (std::size_t s = 0; s < sentences; ++s) {
      const std::size_t words = 6 + bounded(rng, 12);
      const std::size_t slot = bounded(rng, words);
      for (std::size_t w = 0; w < words; ++w) {
        if (!text.empty()) text += ' ';
        if (w == slot && m < mentions.size()) {
          text += mentions[m++];
          text += ' ';
        }
        text += filler[bounded(rng, filler.size())];
      }
      text += '.';
    }
    Document doc;
    doc.id = "h" + std::to_string(d);
    doc.title = "Hurricane report " + std::to_string(d);
    doc.text = std::move(text);
    out.corpus.add(std::move(doc));
  }

  if (out.corpus.empty()) return out;
  const LabelMap labels = extract_all(out.corpus, out.gazetteer);
  static constexpr std::array<std::string_view, 4> kTemplates = {
      "What happened with {0} in {1}?", "How did {0} affect {1} during {2}?",
      "What did researchers report about {0} and {1}?", "Describe {0} near {1} after {2}."};

  for (std::size_t q = 0; q < num_queries; ++q) {
    const Document& src = out.corpus[bounded(rng, out.corpus.size())];
    const DocLabels& dl = labels.at(src.id);
    if (dl.empty()) continue;
    std::vector<LabelRef> refs;
    for (const auto& [ref, c] : dl.counts) refs.push_back(ref);
    std::shuffle(refs.begin(), refs.end(), rng);
    refs.resize(std::min<std::size_t>(refs.size(), 2 + bounded(rng, 2)));

    const std::string_view tmpl = kTemplates[bounded(rng, kTemplates.size())];
    std::string question;
    std::size_t used = 0;
    for (std::size_t i = 0; i < tmpl.size(); ++i) {
      if (tmpl[i] == '{' && i + 2 < tmpl.size() && tmpl[i + 2] == '}') {
        const std::size_t slot = static_cast<std::size_t>(tmpl[i + 1] - '0');
        if (slot < refs.size()) {
          question += *dl.surfaces.at(refs[slot]).begin();
          used = std::max(used, slot + 1);
        } else {
          question += "the coast";
        }
        i += 2;
      } else {
        question += tmpl[i];
      }
    }
    refs.resize(used);

    QueryRecord rec;
    rec.id = "sq" + std::to_string(q);
    rec.question = std::move(question);
    for (const auto& doc : out.corpus) {
      const DocLabels& other = labels.at(doc.id);
      if (std::all_of(refs.begin(), refs.end(), [&](const LabelRef& r) { return other.counts.contains(r); })) {
        rec.gold_doc_ids.push_back(doc.id);
      }
    }
    out.queries.push_back(std::move(rec));
  }
  return out;
}

}  // namespace hyperrag
