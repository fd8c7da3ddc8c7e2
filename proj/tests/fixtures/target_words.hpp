#pragma once

#include <array>
#include <cstdint>

namespace wcs::fixtures {

struct TargetWord {
  const char* word;
  std::int64_t rank;
  std::uint64_t count;
};

// 100 target words from the 10k-40k band with their source counts.
inline constexpr std::array<TargetWord, 100> kTargetWords{{
    {"offenders", 10104, 4980000},
    {"scattered", 10224, 4880000},
    {"profitable", 10437, 4730000},
    {"demon", 10618, 4600000},
    {"executing", 12138, 3700000},
    {"meanings", 12210, 3660000},
    {"crimson", 12536, 3520000},
    {"strangers", 13373, 3180000},
    {"smoked", 13540, 3120000},
    {"shocks", 13662, 3070000},
    {"badges", 13706, 3050000},
    {"averaged", 13767, 3020000},
    {"purity", 13814, 3010000},
    {"brewing", 13896, 2970000},
    {"supposedly", 14095, 2900000},
    {"excludes", 14161, 2880000},
    {"deliberately", 14211, 2860000},
    {"moderately", 14934, 2630000},
    {"disadvantage", 15341, 2500000},
    {"petitions", 15363, 2500000},
    {"horns", 15609, 2430000},
    {"cords", 15803, 2380000},
    {"ovarian", 15885, 2360000},
    {"acknowledges", 16036, 2320000},
    {"exceptionally", 16242, 2270000},
    {"recurrent", 16516, 2210000},
    {"parcels", 16573, 2200000},
    {"appealed", 16941, 2120000},
    {"surveyors", 16943, 2120000},
    {"utter", 17054, 2100000},
    {"lax", 17068, 2090000},
    {"inmate", 17298, 2050000},
    {"discomfort", 17321, 2040000},
    {"practicable", 17595, 1990000},
    {"buggy", 17771, 1960000},
    {"stare", 17937, 1930000},
    {"suction", 18223, 1880000},
    {"multiplied", 18754, 1790000},
    {"occult", 18859, 1770000},
    {"retiring", 19227, 1720000},
    {"tyranny", 19906, 1620000},
    {"jug", 20051, 1600000},
    {"friendships", 21108, 1460000},
    {"tak", 21484, 1410000},
    {"folly", 21891, 1370000},
    {"prosecuted", 22106, 1350000},
    {"denomination", 22154, 1340000},
    {"enumerated", 22308, 1320000},
    {"morphine", 22726, 1280000},
    {"pinned", 22805, 1280000},
    {"dubious", 23071, 1250000},
    {"arrears", 23918, 1180000},
    {"exhaustion", 24740, 1110000},
    {"bedside", 24974, 1090000},
    {"bleak", 25029, 1090000},
    {"undecided", 25269, 1070000},
    {"startling", 25270, 1070000},
    {"halves", 25288, 1070000},
    {"piers", 25427, 1060000},
    {"projecting", 25577, 1050000},
    {"guarding", 26209, 1010000},
    {"circulate", 26691, 980000},
    {"sylvan", 27065, 950000},
    {"reiterated", 27243, 940000},
    {"moaning", 27785, 910000},
    {"pronounce", 28483, 870000},
    {"caprice", 28912, 850000},
    {"dispositions", 29839, 800000},
    {"ascend", 29929, 800000},
    {"doubtless", 30020, 800000},
    {"clutches", 30095, 790000},
    {"dishonesty", 30443, 780000},
    {"guise", 30656, 770000},
    {"triumphant", 31354, 740000},
    {"dormitory", 31439, 740000},
    {"dictation", 32554, 700000},
    {"fillet", 32578, 690000},
    {"robbers", 32695, 690000},
    {"roughness", 33513, 660000},
    {"legions", 33784, 650000},
    {"vulture", 34063, 640000},
    {"feces", 34197, 640000},
    {"manifests", 34319, 640000},
    {"whirl", 34730, 620000},
    {"scourge", 35321, 610000},
    {"intolerable", 35437, 600000},
    {"romances", 35582, 600000},
    {"intimates", 35642, 600000},
    {"apologized", 37027, 560000},
    {"proclaiming", 37125, 560000},
    {"volley", 37393, 550000},
    {"bridle", 37428, 550000},
    {"mattered", 37668, 540000},
    {"murky", 38136, 530000},
    {"embellished", 38237, 530000},
    {"workmen", 38637, 520000},
    {"nodding", 39571, 500000},
    {"unbounded", 39731, 490000},
    {"saddened", 39755, 490000},
    {"precipitated", 39823, 490000},
}};

}  // namespace wcs::fixtures
