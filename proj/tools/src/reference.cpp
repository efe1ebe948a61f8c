#include "levyx_cli/reference.hpp"

#include "levyx/error.hpp"

namespace levyx::cli {

const ReferenceTable& cev_gauss_put_table() {
    static const ReferenceTable t{
        "cev-gauss", "cev-gauss", "taylor", 3, "put",
        {
            {0.25, -0.6931, 0.0006, 0.0006, 0.0007, 0.5864, 0.5856, 0.5901},
            {0.25, -0.4185, 0.0024, 0.0024, 0.0025, 0.4563, 0.4553, 0.4583},
            {0.25, -0.1438, 0.0111, 0.0110, 0.0112, 0.2875, 0.2865, 0.2883},
            {0.25, 0.1308, 0.1511, 0.1508, 0.1513, 0.2595, 0.2573, 0.2608},
            {0.25, 0.4055, 0.5028, 0.5024, 0.5030, 0.4238, 0.4152, 0.4288},
            {1.0, -1.2040, 0.0009, 0.0009, 0.0010, 0.5115, 0.5176, 0.5210},
            {1.0, -0.7297, 0.0046, 0.0047, 0.0048, 0.4174, 0.4178, 0.4199},
            {1.0, -0.2554, 0.0314, 0.0313, 0.0316, 0.3109, 0.3102, 0.3117},
            {1.0, 0.2189, 0.2781, 0.2775, 0.2784, 0.2638, 0.2620, 0.2649},
            {1.0, 0.6931, 1.0034, 1.0030, 1.0041, 0.3358, 0.3296, 0.3459},
            {3.0, -1.3863, 0.0074, 0.0081, 0.0083, 0.4758, 0.4851, 0.4870},
            {3.0, -0.8664, 0.0224, 0.0224, 0.0227, 0.4031, 0.4029, 0.4045},
            {3.0, -0.3466, 0.0776, 0.0773, 0.0779, 0.3280, 0.3274, 0.3288},
            {3.0, 0.1733, 0.3097, 0.3094, 0.3107, 0.2690, 0.2685, 0.2703},
            {3.0, 0.6931, 1.0155, 1.0150, 1.0169, 0.2558, 0.2540, 0.2604},
            {5.0, -1.6094, 0.0160, 0.0164, 0.0166, 0.5082, 0.5111, 0.5128},
            {5.0, -0.9324, 0.0439, 0.0436, 0.0440, 0.4118, 0.4107, 0.4121},
            {5.0, -0.2554, 0.1504, 0.1497, 0.1507, 0.3203, 0.3194, 0.3208},
            {5.0, 0.4216, 0.6139, 0.6123, 0.6142, 0.2521, 0.2500, 0.2524},
            {5.0, 1.0986, 2.0050, 2.0032, 2.0057, 0.2297, 0.2163, 0.2342},
        }};
    return t;
}

const ReferenceTable& cev_vg_put_table() {
    static const ReferenceTable t{
        "cev-vg", "cev-vg", "two-point", 2, "put",
        {
            {0.5, -0.6931, 0.0014, 0.0014, 0.0015, 0.4631, 0.4624, 0.4652},
            {0.5, -0.4185, 0.0070, 0.0070, 0.0071, 0.4000, 0.3995, 0.4014},
            {0.5, -0.1438, 0.0363, 0.0362, 0.0365, 0.3336, 0.3331, 0.3346},
            {0.5, 0.1308, 0.1702, 0.1697, 0.1704, 0.2727, 0.2707, 0.2736},
            {0.5, 0.4055, 0.5011, 0.5004, 0.5012, 0.2615, 0.2291, 0.2646},
            {1.0, -0.9163, 0.0028, 0.0027, 0.0028, 0.4687, 0.4678, 0.4702},
            {1.0, -0.5697, 0.0109, 0.0109, 0.0110, 0.4057, 0.4050, 0.4068},
            {1.0, -0.2231, 0.0473, 0.0472, 0.0476, 0.3434, 0.3428, 0.3444},
            {1.0, 0.1234, 0.1970, 0.1965, 0.1974, 0.2836, 0.2825, 0.2847},
            {1.0, 0.4700, 0.6033, 0.6025, 0.6037, 0.2452, 0.2355, 0.2506},
        }};
    return t;
}

const std::vector<RandomCallBlock>& cev_gauss_call_blocks() {
    static const std::vector<RandomCallBlock> b{
        {{0.5432, 0.3756, 0.0518, -0.5013, 0.3839}, 4.9787,
         {{0.25, -0.60, 0.4552, 0.4552, 0.4553, 0.6849, 0.6836, 0.6869},
          {0.25, -0.35, 0.3123, 0.3122, 0.3124, 0.6230, 0.6217, 0.6242},
          {0.25, -0.10, 0.1621, 0.1618, 0.1623, 0.5704, 0.5687, 0.5714},
          {0.25, 0.15, 0.0496, 0.0492, 0.0500, 0.5240, 0.5222, 0.5266},
          {0.25, 0.40, 0.0059, 0.0057, 0.0067, 0.4821, 0.4787, 0.4950}}},
        {{0.1182, 0.9960, 0.8938, -0.4486, 0.2619}, 4.77419,
         {{0.25, -0.60, 0.4566, 0.4566, 0.4567, 0.7257, 0.7239, 0.7271},
          {0.25, -0.35, 0.3137, 0.3136, 0.3139, 0.6391, 0.6378, 0.6405},
          {0.25, -0.10, 0.1431, 0.1429, 0.1434, 0.4615, 0.4602, 0.4630},
          {0.25, 0.15, 0.0032, 0.0030, 0.0037, 0.2013, 0.1970, 0.2073},
          {0.25, 0.40, 0.0000, 0.0000, 0.0000, 0.2510, 0.2567, 0.2616}}},
        {{0.3376, 0.4805, 0.9610, -0.2420, 0.5391}, 4.31915,
         {{0.25, -0.60, 0.4621, 0.4619, 0.4621, 0.8462, 0.8439, 0.8478},
          {0.25, -0.35, 0.3190, 0.3189, 0.3192, 0.6949, 0.6933, 0.6968},
          {0.25, -0.10, 0.1578, 0.1575, 0.1581, 0.5457, 0.5444, 0.5476},
          {0.25, 0.15, 0.0451, 0.0448, 0.0456, 0.4990, 0.4974, 0.5021},
          {0.25, 0.40, 0.0155, 0.0152, 0.0162, 0.6006, 0.5981, 0.6080}}},
        {{0.2469, 0.1875, 0.4229, -0.2823, 0.7564}, 4.46032,
         {{0.25, -0.60, 0.4592, 0.4591, 0.4593, 0.7871, 0.7857, 0.7900},
          {0.25, -0.35, 0.3100, 0.3099, 0.3102, 0.5965, 0.5950, 0.5986},
          {0.25, -0.10, 0.1341, 0.1338, 0.1343, 0.4083, 0.4069, 0.4096},
          {0.25, 0.15, 0.0306, 0.0302, 0.0309, 0.4149, 0.4126, 0.4168},
          {0.25, 0.40, 0.0176, 0.0171, 0.0179, 0.6213, 0.6171, 0.6244}}},
        {{0.5806, 0.5829, 0.0367, -0.6622, 0.2984}, 4.97872,
         {{1.0, -1.0, 0.6487, 0.6486, 0.6488, 0.7306, 0.7294, 0.7319},
          {1.0, -0.6, 0.5001, 0.5000, 0.5004, 0.6719, 0.6711, 0.6734},
          {1.0, -0.2, 0.3220, 0.3216, 0.3224, 0.6167, 0.6157, 0.6182},
          {1.0, 0.2, 0.1512, 0.1507, 0.1520, 0.5649, 0.5636, 0.5671},
          {1.0, 0.6, 0.0413, 0.0408, 0.0428, 0.5166, 0.5145, 0.5219}}},
        {{0.3921, 0.1271, 0.4176, -0.1661, 0.5823}, 4.54839,
         {{1.0, -1.0, 0.6556, 0.6555, 0.6561, 0.8022, 0.8014, 0.8075},
          {1.0, -0.6, 0.5012, 0.5011, 0.5018, 0.6779, 0.6772, 0.6809},
          {1.0, -0.2, 0.3052, 0.3051, 0.3060, 0.5655, 0.5651, 0.5678},
          {1.0, 0.2, 0.1188, 0.1184, 0.1198, 0.4832, 0.4822, 0.4858},
          {1.0, 0.6, 0.0299, 0.0296, 0.0315, 0.4708, 0.4694, 0.4772}}},
        {{0.5803, 0.2426, 0.5926, -0.0877, 0.3236}, 4.3125,
         {{1.0, -1.0, 0.6679, 0.6677, 0.6681, 0.9122, 0.9108, 0.9140},
          {1.0, -0.6, 0.5237, 0.5236, 0.5243, 0.7916, 0.7913, 0.7943},
          {1.0, -0.2, 0.3436, 0.3431, 0.3441, 0.6830, 0.6814, 0.6845},
          {1.0, 0.2, 0.1592, 0.1581, 0.1596, 0.5851, 0.5823, 0.5862},
          {1.0, 0.6, 0.0373, 0.0358, 0.0379, 0.5009, 0.4949, 0.5033}}},
        {{0.3096, 0.6417, 0.3806, -0.02824, 0.0122}, 4.9257,
         {{1.0, -1.0, 0.6323, 0.6323, 0.6324, 0.36740, 0.3680, 0.3708},
          {1.0, -0.6, 0.4554, 0.4553, 0.4554, 0.34493, 0.3442, 0.3456},
          {1.0, -0.2, 0.2283, 0.2281, 0.2284, 0.32159, 0.3208, 0.3221},
          {1.0, 0.2, 0.0495, 0.0491, 0.0500, 0.29930, 0.2980, 0.3006},
          {1.0, 0.6, 0.0021, 0.0015, 0.0027, 0.27807, 0.2655, 0.2888}}},
    };
    return b;
}

const ReferenceTable& reference_table(const std::string& name) {
    if (name == "cev-gauss") return cev_gauss_put_table();
    if (name == "cev-vg") return cev_vg_put_table();
    fail(ErrorKind::Config, "unknown reference table '" + name + "' (known: cev-gauss, cev-vg)");
}

std::vector<std::string> reference_table_names() { return {"cev-gauss", "cev-vg"}; }

}  // namespace levyx::cli
