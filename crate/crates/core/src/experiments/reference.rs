//! Published census tables for the 3-wire NFT library, kept for
//! side-by-side comparison in reports. Each table maps a value (or a
//! value/companion pair) to a count, sorted ascending.
//!
//! Only the minimum-length table and the universal-library count are
//! expected to match a correct census exactly; the remaining tables were
//! produced under unstated tie-breaking and cost conventions.

/// Number of universal sub-libraries.
pub const UNIVERSAL_COUNT: u32 = 1960;

/// Published total of (sub-library, specification) pairs with a circuit.
pub const SYNTHESIZABLE_PAIRS: u64 = 80_925_627;

/// Published mean of the minimum-cost table.
pub const MEAN_MIN_COST: f64 = 11.76967;

/// Published mean of the minimum-length table.
pub const MEAN_MIN_LEN: f64 = 5.865;

/// Covering count (number of sub-libraries) → number of specifications.
pub const SPEC_COVERING_COUNT: &[(u32, u32)] = &[
    (1960, 29670), (1984, 216), (2016, 1746), (2044, 36), (2080, 1170), (2085, 1), (2086, 559),
    (2116, 540), (2120, 96), (2122, 2974), (2128, 162), (2132, 192), (2144, 78), (2152, 36),
    (2176, 24), (2191, 27), (2196, 96), (2198, 12), (2217, 1293), (2218, 108), (2220, 72),
    (2246, 12), (2249, 36), (2263, 108), (2264, 24), (2266, 80), (2268, 12), (2274, 12),
    (2284, 48), (2287, 135), (2311, 27), (2320, 210), (2324, 24), (2335, 9), (2348, 12),
    (2353, 24), (2354, 12), (2393, 45), (2412, 72), (2417, 27), (2428, 24), (2432, 11), (2450, 6),
    (2455, 27), (2456, 3), (2465, 3), (2468, 12), (2496, 6), (2525, 24), (2528, 27), (2540, 6),
    (2560, 27), (2605, 12), (2624, 13), (2625, 8), (2636, 6), (2676, 12), (2688, 9), (2689, 3),
    (2705, 3), (2732, 6), (2816, 7), (2880, 6), (2944, 6), (2961, 3), (3072, 3), (3200, 3),
    (3264, 6),
];

/// Maximum length → number of specifications.
pub const SPEC_MAX_LEN: &[(u32, u32)] = &[
    (7, 3), (8, 7), (9, 16), (10, 29), (11, 63), (12, 154), (13, 1455), (14, 14966), (15, 19544),
    (16, 3815), (17, 243), (18, 24),
];

/// (maximum length, cost) → number of specifications.
pub const SPEC_MAX_LEN_PAIRED: &[(u32, u32, u32)] = &[
    (7, 9, 2), (7, 11, 1), (8, 14, 3), (8, 20, 4), (9, 11, 1), (9, 13, 2), (9, 17, 3), (9, 19, 6),
    (9, 21, 1), (9, 24, 3), (10, 16, 3), (10, 18, 1), (10, 22, 9), (10, 24, 9), (10, 26, 7),
    (11, 11, 2), (11, 17, 6), (11, 19, 1), (11, 21, 12), (11, 22, 2), (11, 23, 14), (11, 24, 2),
    (11, 26, 6), (11, 27, 18), (12, 14, 6), (12, 16, 8), (12, 17, 2), (12, 18, 21), (12, 21, 14),
    (12, 22, 27), (12, 23, 1), (12, 24, 7), (12, 26, 17), (12, 27, 8), (12, 28, 4), (12, 29, 8),
    (12, 30, 2), (12, 31, 6), (12, 32, 10), (12, 33, 4), (12, 34, 6), (12, 38, 3), (13, 15, 5),
    (13, 16, 2), (13, 17, 49), (13, 18, 52), (13, 19, 64), (13, 20, 37), (13, 21, 40),
    (13, 22, 187), (13, 23, 213), (13, 24, 72), (13, 25, 13), (13, 26, 59), (13, 27, 148),
    (13, 28, 124), (13, 29, 29), (13, 30, 43), (13, 31, 74), (13, 32, 82), (13, 33, 11),
    (13, 34, 7), (13, 35, 19), (13, 36, 50), (13, 37, 28), (13, 38, 19), (13, 39, 20), (13, 40, 2),
    (13, 41, 4), (13, 43, 2), (14, 16, 7), (14, 18, 110), (14, 19, 132), (14, 20, 157),
    (14, 21, 109), (14, 22, 662), (14, 23, 1735), (14, 24, 1275), (14, 25, 254), (14, 26, 404),
    (14, 27, 2081), (14, 28, 3115), (14, 29, 976), (14, 30, 129), (14, 31, 493), (14, 32, 1389),
    (14, 33, 702), (14, 34, 46), (14, 35, 86), (14, 36, 137), (14, 37, 263), (14, 38, 126),
    (14, 39, 122), (14, 40, 107), (14, 41, 109), (14, 42, 62), (14, 43, 46), (14, 44, 52),
    (14, 45, 48), (14, 46, 9), (14, 47, 1), (14, 48, 16), (14, 49, 6), (15, 19, 24), (15, 20, 29),
    (15, 21, 26), (15, 22, 102), (15, 23, 1126), (15, 24, 1392), (15, 25, 473), (15, 26, 76),
    (15, 27, 1364), (15, 28, 3963), (15, 29, 2517), (15, 30, 376), (15, 31, 277), (15, 32, 1653),
    (15, 33, 2718), (15, 34, 1047), (15, 35, 60), (15, 36, 115), (15, 37, 317), (15, 38, 361),
    (15, 39, 137), (15, 40, 174), (15, 41, 222), (15, 42, 219), (15, 43, 195), (15, 44, 238),
    (15, 45, 98), (15, 46, 63), (15, 47, 32), (15, 48, 47), (15, 49, 57), (15, 50, 22),
    (15, 51, 6), (15, 53, 18), (16, 20, 3), (16, 22, 3), (16, 23, 18), (16, 24, 251),
    (16, 25, 102), (16, 26, 6), (16, 27, 66), (16, 28, 335), (16, 29, 505), (16, 30, 189),
    (16, 31, 15), (16, 32, 141), (16, 33, 728), (16, 34, 836), (16, 35, 167), (16, 36, 9),
    (16, 37, 16), (16, 38, 128), (16, 39, 97), (16, 40, 17), (16, 41, 34), (16, 42, 17),
    (16, 43, 16), (16, 44, 31), (16, 45, 22), (16, 46, 14), (16, 47, 17), (16, 48, 6),
    (16, 49, 21), (16, 50, 2), (16, 51, 1), (16, 53, 2), (17, 25, 12), (17, 28, 18), (17, 29, 3),
    (17, 32, 9), (17, 33, 12), (17, 34, 63), (17, 35, 66), (17, 36, 6), (17, 39, 45), (17, 40, 9),
    (18, 29, 3), (18, 33, 6), (18, 36, 6), (18, 40, 9),
];

/// Minimum length → number of specifications.
pub const SPEC_MIN_LEN: &[(u32, u32)] = &[
    (1, 12), (2, 102), (3, 625), (4, 2780), (5, 8921), (6, 17049), (7, 10253), (8, 577),
];

/// Minimum length → number of specifications, earlier exhaustive study.
pub const SPEC_MIN_LEN_PRIOR: &[(u32, u32)] = &[
    (1, 12), (2, 102), (3, 625), (4, 2780), (5, 8921), (6, 17049), (7, 10253), (8, 577),
];

/// (minimum length, cost) → number of specifications.
pub const SPEC_MIN_LEN_PAIRED: &[(u32, u32, u32)] = &[
    (1, 0, 3), (1, 1, 6), (1, 5, 3), (2, 0, 3), (2, 1, 24), (2, 2, 24), (2, 5, 15), (2, 6, 30),
    (2, 9, 3), (2, 10, 3), (3, 0, 1), (3, 1, 18), (3, 2, 117), (3, 3, 51), (3, 5, 24), (3, 6, 162),
    (3, 7, 138), (3, 9, 18), (3, 10, 51), (3, 11, 39), (3, 14, 5), (3, 15, 1), (4, 2, 51),
    (4, 3, 282), (4, 4, 60), (4, 5, 8), (4, 6, 186), (4, 7, 772), (4, 8, 369), (4, 9, 39),
    (4, 10, 228), (4, 11, 430), (4, 12, 233), (4, 14, 45), (4, 15, 62), (4, 16, 13), (4, 19, 2),
    (5, 3, 75), (5, 4, 375), (5, 5, 24), (5, 6, 10), (5, 7, 673), (5, 8, 2041), (5, 9, 516),
    (5, 10, 284), (5, 11, 1181), (5, 12, 1883), (5, 13, 669), (5, 14, 137), (5, 15, 490),
    (5, 16, 409), (5, 17, 89), (5, 18, 5), (5, 19, 45), (5, 20, 14), (5, 21, 1), (6, 4, 45),
    (6, 5, 168), (6, 6, 2), (6, 7, 22), (6, 8, 1219), (6, 9, 2233), (6, 10, 253), (6, 11, 833),
    (6, 12, 3070), (6, 13, 3933), (6, 14, 759), (6, 15, 913), (6, 16, 1860), (6, 17, 1242),
    (6, 18, 234), (6, 19, 142), (6, 20, 104), (6, 21, 16), (6, 22, 1), (7, 6, 14), (7, 8, 33),
    (7, 9, 518), (7, 10, 222), (7, 11, 106), (7, 12, 856), (7, 13, 2278), (7, 14, 1200),
    (7, 15, 508), (7, 16, 1493), (7, 17, 1813), (7, 18, 848), (7, 19, 226), (7, 20, 101),
    (7, 21, 28), (7, 22, 3), (7, 23, 3), (7, 24, 3), (8, 9, 3), (8, 12, 9), (8, 13, 31),
    (8, 14, 36), (8, 15, 22), (8, 16, 145), (8, 17, 173), (8, 18, 109), (8, 19, 39), (8, 20, 9),
    (8, 21, 1),
];

/// Maximum cost → number of specifications.
pub const SPEC_MAX_COST: &[(u32, u32)] = &[
    (18, 1), (19, 1), (20, 1), (22, 10), (23, 9), (24, 21), (25, 22), (26, 18), (27, 41), (28, 23),
    (29, 37), (30, 66), (31, 122), (32, 314), (33, 549), (34, 525), (35, 972), (36, 1816),
    (37, 3088), (38, 3035), (39, 3769), (40, 4111), (41, 3854), (42, 4067), (43, 5406), (44, 3484),
    (45, 1652), (46, 883), (47, 687), (48, 914), (49, 622), (50, 96), (51, 28), (52, 5), (53, 68),
    (54, 2),
];

/// (maximum cost, length) → number of specifications.
pub const SPEC_MAX_COST_PAIRED: &[(u32, u32, u32)] = &[
    (18, 6, 1), (19, 6, 1), (20, 6, 1), (22, 7, 1), (22, 10, 3), (22, 11, 3), (22, 12, 3),
    (23, 7, 2), (23, 8, 4), (23, 11, 2), (23, 12, 1), (24, 7, 4), (24, 8, 7), (24, 9, 4),
    (24, 10, 3), (24, 11, 2), (24, 12, 1), (25, 7, 18), (25, 8, 2), (25, 9, 2), (26, 7, 5),
    (26, 8, 2), (26, 9, 1), (26, 10, 10), (27, 7, 14), (27, 8, 2), (27, 9, 5), (27, 11, 18),
    (27, 12, 2), (28, 8, 8), (28, 9, 3), (28, 10, 3), (28, 11, 6), (28, 12, 3), (29, 7, 2),
    (29, 8, 1), (29, 9, 4), (29, 10, 7), (29, 11, 6), (29, 12, 17), (30, 8, 2), (30, 9, 3),
    (30, 10, 38), (30, 11, 7), (30, 12, 15), (30, 13, 1), (31, 7, 1), (31, 9, 1), (31, 10, 25),
    (31, 11, 29), (31, 12, 33), (31, 13, 27), (31, 14, 5), (31, 15, 1), (32, 8, 1), (32, 10, 36),
    (32, 11, 53), (32, 12, 98), (32, 13, 73), (32, 14, 44), (32, 15, 9), (33, 8, 2), (33, 9, 15),
    (33, 10, 18), (33, 11, 54), (33, 12, 193), (33, 13, 173), (33, 14, 51), (33, 15, 43),
    (34, 8, 1), (34, 9, 1), (34, 10, 16), (34, 11, 88), (34, 12, 186), (34, 13, 168), (34, 14, 41),
    (34, 15, 24), (35, 9, 2), (35, 10, 8), (35, 11, 127), (35, 12, 370), (35, 13, 406),
    (35, 14, 59), (36, 10, 2), (36, 11, 98), (36, 12, 556), (36, 13, 839), (36, 14, 292),
    (36, 15, 29), (37, 10, 44), (37, 11, 207), (37, 12, 575), (37, 13, 1268), (37, 14, 864),
    (37, 15, 127), (37, 16, 3), (38, 10, 72), (38, 11, 376), (38, 12, 745), (38, 13, 972),
    (38, 14, 642), (38, 15, 181), (38, 16, 47), (39, 10, 24), (39, 11, 305), (39, 12, 983),
    (39, 13, 1467), (39, 14, 830), (39, 15, 132), (39, 16, 28), (40, 10, 2), (40, 11, 83),
    (40, 12, 631), (40, 13, 1682), (40, 14, 1437), (40, 15, 261), (40, 16, 15), (41, 11, 58),
    (41, 12, 378), (41, 13, 1297), (41, 14, 1685), (41, 15, 411), (41, 16, 25), (42, 11, 107),
    (42, 12, 854), (42, 13, 1391), (42, 14, 1305), (42, 15, 393), (42, 16, 17), (43, 11, 87),
    (43, 12, 1251), (43, 13, 2241), (43, 14, 1457), (43, 15, 355), (43, 16, 15), (44, 11, 13),
    (44, 12, 351), (44, 13, 946), (44, 14, 1652), (44, 15, 494), (44, 16, 28), (45, 11, 1),
    (45, 12, 98), (45, 13, 215), (45, 14, 921), (45, 15, 394), (45, 16, 23), (46, 12, 31),
    (46, 13, 109), (46, 14, 405), (46, 15, 323), (46, 16, 15), (47, 12, 22), (47, 13, 168),
    (47, 14, 275), (47, 15, 204), (47, 16, 18), (48, 13, 147), (48, 14, 529), (48, 15, 230),
    (48, 16, 8), (49, 13, 1), (49, 14, 296), (49, 15, 303), (49, 16, 22), (50, 13, 1),
    (50, 14, 10), (50, 15, 83), (50, 16, 2), (51, 14, 9), (51, 15, 18), (51, 16, 1), (52, 14, 1),
    (52, 15, 4), (53, 14, 22), (53, 15, 44), (53, 16, 2), (54, 15, 2),
];

/// Minimum cost → number of specifications.
pub const SPEC_MIN_COST: &[(u32, u32)] = &[
    (0, 7), (1, 48), (2, 192), (3, 408), (4, 480), (5, 288), (6, 592), (7, 1962), (8, 3887),
    (9, 2916), (10, 1299), (11, 3683), (12, 7221), (13, 6059), (14, 1465), (15, 3562), (16, 4201),
    (17, 2049),
];

/// Minimum cost → number of specifications, earlier exhaustive study.
pub const SPEC_MIN_COST_PRIOR: &[(u32, u32)] = &[
    (0, 7), (1, 48), (2, 192), (3, 408), (4, 480), (5, 288), (6, 592), (7, 2016), (8, 4128),
    (9, 2496), (10, 672), (11, 2880), (12, 7488), (13, 7488), (14, 384), (15, 1600), (16, 5568),
    (17, 3584),
];

/// (minimum cost, length) → number of specifications.
pub const SPEC_MIN_COST_PAIRED: &[(u32, u32, u32)] = &[
    (0, 1, 3), (0, 2, 3), (0, 3, 1), (1, 1, 6), (1, 2, 24), (1, 3, 18), (2, 2, 24), (2, 3, 117),
    (2, 4, 51), (3, 3, 51), (3, 4, 282), (3, 5, 75), (4, 4, 60), (4, 5, 375), (4, 6, 45),
    (5, 1, 3), (5, 2, 15), (5, 3, 30), (5, 4, 30), (5, 5, 39), (5, 6, 171), (6, 2, 24),
    (6, 3, 132), (6, 4, 222), (6, 5, 150), (6, 6, 50), (6, 7, 14), (7, 3, 99), (7, 4, 615),
    (7, 5, 820), (7, 6, 362), (7, 7, 63), (7, 8, 3), (8, 4, 249), (8, 5, 1649), (8, 6, 1489),
    (8, 7, 446), (8, 8, 48), (8, 9, 6), (9, 2, 3), (9, 3, 18), (9, 4, 45), (9, 5, 356),
    (9, 6, 1794), (9, 7, 600), (9, 8, 97), (9, 9, 2), (9, 10, 1), (10, 2, 3), (10, 3, 39),
    (10, 4, 180), (10, 5, 363), (10, 6, 391), (10, 7, 295), (10, 8, 28), (11, 3, 27), (11, 4, 261),
    (11, 5, 962), (11, 6, 1366), (11, 7, 801), (11, 8, 248), (11, 9, 18), (12, 4, 123),
    (12, 5, 1090), (12, 6, 2738), (12, 7, 2233), (12, 8, 869), (12, 9, 165), (12, 10, 3),
    (13, 5, 276), (13, 6, 2244), (13, 7, 2158), (13, 8, 875), (13, 9, 381), (13, 10, 113),
    (13, 11, 12), (14, 3, 5), (14, 4, 41), (14, 5, 141), (14, 6, 360), (14, 7, 473), (14, 8, 247),
    (14, 9, 125), (14, 10, 58), (14, 11, 13), (14, 12, 2), (15, 3, 1), (15, 4, 35), (15, 5, 295),
    (15, 6, 869), (15, 7, 1111), (15, 8, 805), (15, 9, 383), (15, 10, 63), (16, 4, 8),
    (16, 5, 154), (16, 6, 873), (16, 7, 1443), (16, 8, 1023), (16, 9, 591), (16, 10, 109),
    (17, 5, 26), (17, 6, 290), (17, 7, 548), (17, 8, 332), (17, 9, 347), (17, 10, 338),
    (17, 11, 155), (17, 12, 13),
];

/// Specifications covered (group order − 1) → number of sub-libraries.
pub const LIBRARY_COVERAGE: &[(u32, u32)] = &[
    (1, 12), (3, 30), (4, 1), (5, 5), (7, 73), (11, 15), (15, 90), (23, 37), (31, 90), (35, 9),
    (47, 90), (63, 96), (71, 24), (95, 99), (119, 24), (127, 96), (143, 27), (167, 18), (191, 186),
    (383, 72), (575, 108), (719, 117), (1151, 360), (1342, 1), (1343, 125), (1439, 168),
    (5039, 162), (40319, 1960),
];

/// Length eccentricity → number of sub-libraries.
pub const LIBRARY_MAX_LEN: &[(u32, u32)] = &[
    (1, 12), (2, 54), (3, 79), (4, 148), (5, 231), (6, 289), (7, 223), (8, 364), (9, 453),
    (10, 498), (11, 498), (12, 433), (13, 378), (14, 255), (15, 120), (16, 51), (17, 6), (18, 3),
];

/// (length eccentricity, cost) → number of sub-libraries.
pub const LIBRARY_MAX_LEN_PAIRED: &[(u32, u32, u32)] = &[
    (1, 0, 3), (1, 1, 6), (1, 5, 3), (2, 0, 3), (2, 1, 18), (2, 2, 12), (2, 5, 3), (2, 6, 18),
    (3, 0, 1), (3, 1, 12), (3, 2, 21), (3, 3, 3), (3, 6, 24), (3, 7, 15), (3, 14, 2), (3, 15, 1),
    (4, 2, 40), (4, 3, 9), (4, 4, 33), (4, 6, 12), (4, 7, 17), (4, 8, 7), (4, 10, 12), (4, 12, 11),
    (4, 15, 4), (4, 16, 2), (4, 18, 1), (5, 2, 11), (5, 3, 43), (5, 4, 39), (5, 6, 4), (5, 7, 5),
    (5, 8, 18), (5, 9, 10), (5, 10, 34), (5, 11, 23), (5, 12, 19), (5, 13, 5), (5, 15, 12),
    (5, 16, 6), (5, 19, 1), (5, 20, 1), (6, 3, 11), (6, 4, 76), (6, 6, 7), (6, 7, 15), (6, 8, 26),
    (6, 9, 21), (6, 10, 36), (6, 11, 23), (6, 12, 38), (6, 13, 5), (6, 14, 11), (6, 15, 3),
    (6, 16, 3), (6, 18, 8), (6, 20, 2), (6, 21, 2), (6, 22, 2), (7, 5, 39), (7, 6, 10), (7, 7, 6),
    (7, 8, 14), (7, 9, 27), (7, 11, 12), (7, 12, 4), (7, 13, 22), (7, 14, 6), (7, 15, 17),
    (7, 16, 5), (7, 17, 13), (7, 18, 2), (7, 19, 27), (7, 20, 4), (7, 22, 4), (7, 25, 4),
    (7, 26, 3), (7, 27, 4), (8, 6, 32), (8, 7, 10), (8, 8, 5), (8, 10, 59), (8, 11, 2), (8, 12, 5),
    (8, 13, 25), (8, 14, 9), (8, 15, 28), (8, 16, 24), (8, 17, 15), (8, 18, 45), (8, 19, 42),
    (8, 20, 22), (8, 21, 1), (8, 22, 10), (8, 23, 10), (8, 24, 13), (8, 25, 3), (8, 27, 1),
    (8, 28, 2), (8, 30, 1), (9, 7, 48), (9, 8, 20), (9, 11, 10), (9, 12, 3), (9, 13, 19),
    (9, 14, 44), (9, 15, 31), (9, 16, 6), (9, 17, 40), (9, 18, 49), (9, 19, 37), (9, 20, 20),
    (9, 21, 41), (9, 22, 14), (9, 24, 13), (9, 25, 9), (9, 27, 3), (9, 28, 7), (9, 29, 19),
    (9, 30, 2), (9, 31, 8), (9, 32, 4), (9, 33, 2), (9, 34, 4), (10, 7, 7), (10, 8, 14),
    (10, 12, 17), (10, 13, 3), (10, 14, 4), (10, 15, 20), (10, 16, 30), (10, 17, 18), (10, 18, 36),
    (10, 19, 83), (10, 20, 78), (10, 21, 14), (10, 22, 30), (10, 23, 26), (10, 24, 35),
    (10, 25, 4), (10, 26, 17), (10, 27, 3), (10, 28, 21), (10, 29, 9), (10, 30, 19), (10, 32, 2),
    (10, 34, 5), (10, 35, 1), (10, 36, 2), (11, 13, 4), (11, 14, 1), (11, 15, 1), (11, 16, 45),
    (11, 17, 54), (11, 18, 20), (11, 19, 47), (11, 20, 42), (11, 21, 89), (11, 22, 6),
    (11, 23, 24), (11, 24, 20), (11, 25, 21), (11, 26, 18), (11, 27, 39), (11, 28, 22),
    (11, 29, 20), (11, 30, 11), (11, 31, 5), (11, 32, 3), (11, 33, 3), (11, 34, 1), (11, 35, 1),
    (11, 37, 1), (12, 13, 1), (12, 14, 5), (12, 16, 2), (12, 17, 4), (12, 18, 11), (12, 19, 3),
    (12, 20, 12), (12, 21, 52), (12, 22, 30), (12, 23, 17), (12, 24, 52), (12, 25, 44),
    (12, 26, 42), (12, 27, 14), (12, 28, 23), (12, 29, 31), (12, 30, 28), (12, 31, 6),
    (12, 32, 12), (12, 33, 13), (12, 34, 5), (12, 35, 9), (12, 36, 4), (12, 37, 4), (12, 38, 9),
    (13, 16, 1), (13, 18, 5), (13, 19, 63), (13, 20, 8), (13, 21, 15), (13, 22, 17), (13, 23, 36),
    (13, 24, 10), (13, 25, 55), (13, 26, 19), (13, 27, 17), (13, 28, 1), (13, 29, 11),
    (13, 30, 22), (13, 31, 10), (13, 32, 8), (13, 33, 10), (13, 34, 16), (13, 35, 10), (13, 36, 4),
    (13, 37, 13), (13, 38, 3), (13, 39, 13), (13, 40, 2), (13, 41, 4), (13, 42, 2), (13, 47, 3),
    (14, 16, 6), (14, 18, 3), (14, 19, 18), (14, 20, 17), (14, 21, 2), (14, 22, 1), (14, 23, 21),
    (14, 24, 48), (14, 25, 15), (14, 26, 8), (14, 27, 21), (14, 28, 27), (14, 29, 3), (14, 30, 3),
    (14, 31, 2), (14, 32, 9), (14, 34, 8), (14, 35, 9), (14, 36, 11), (14, 37, 6), (14, 38, 5),
    (14, 39, 1), (14, 40, 7), (14, 41, 1), (14, 42, 2), (14, 45, 1), (15, 21, 3), (15, 23, 4),
    (15, 24, 4), (15, 25, 15), (15, 26, 8), (15, 28, 16), (15, 29, 10), (15, 30, 1), (15, 31, 9),
    (15, 32, 16), (15, 33, 9), (15, 34, 1), (15, 35, 1), (15, 36, 3), (15, 38, 1), (15, 39, 2),
    (15, 41, 4), (15, 42, 5), (15, 43, 2), (15, 44, 4), (15, 45, 2), (16, 23, 2), (16, 25, 2),
    (16, 26, 7), (16, 30, 6), (16, 31, 3), (16, 32, 6), (16, 33, 4), (16, 34, 3), (16, 36, 3),
    (16, 37, 3), (16, 38, 3), (16, 41, 1), (16, 46, 2), (16, 47, 3), (16, 48, 1), (16, 49, 2),
    (17, 25, 2), (17, 35, 4), (18, 33, 1), (18, 36, 2),
];

/// Cost eccentricity → number of sub-libraries.
pub const LIBRARY_MAX_COST: &[(u32, u32)] = &[
    (0, 7), (1, 36), (2, 69), (3, 54), (4, 138), (5, 51), (6, 98), (7, 102), (8, 94), (9, 48),
    (10, 31), (11, 72), (12, 56), (13, 18), (14, 57), (15, 75), (16, 45), (17, 23), (18, 139),
    (19, 153), (20, 52), (21, 76), (22, 92), (23, 56), (24, 79), (25, 180), (26, 230), (27, 207),
    (28, 227), (29, 202), (30, 131), (31, 139), (32, 229), (33, 117), (34, 95), (35, 99), (36, 91),
    (37, 104), (38, 69), (39, 56), (40, 37), (41, 33), (42, 51), (43, 25), (44, 14), (45, 7),
    (46, 5), (47, 10), (48, 1), (49, 3), (50, 4), (51, 3), (52, 1), (53, 2), (54, 2),
];

/// (cost eccentricity, length) → number of sub-libraries.
pub const LIBRARY_MAX_COST_PAIRED: &[(u32, u32, u32)] = &[
    (0, 1, 7), (1, 1, 36), (2, 2, 57), (2, 4, 12), (3, 3, 24), (3, 4, 1), (3, 5, 29), (4, 4, 129),
    (4, 6, 9), (5, 1, 6), (5, 6, 15), (5, 7, 30), (6, 2, 48), (6, 6, 38), (6, 8, 12), (7, 3, 54),
    (7, 7, 30), (7, 8, 4), (7, 9, 14), (8, 4, 18), (8, 5, 6), (8, 6, 12), (8, 8, 34), (8, 9, 19),
    (8, 10, 5), (9, 5, 42), (9, 10, 6), (10, 3, 4), (10, 4, 27), (11, 3, 17), (11, 4, 16),
    (11, 5, 39), (12, 4, 19), (12, 5, 8), (12, 6, 29), (13, 5, 9), (13, 6, 9), (14, 3, 2),
    (14, 4, 34), (14, 6, 12), (14, 7, 9), (15, 3, 1), (15, 4, 37), (15, 5, 8), (15, 6, 2),
    (15, 7, 22), (15, 8, 3), (15, 9, 2), (16, 4, 16), (16, 5, 12), (16, 6, 14), (16, 7, 3),
    (17, 5, 9), (17, 6, 2), (17, 7, 10), (17, 8, 2), (18, 4, 1), (18, 5, 3), (18, 6, 26),
    (18, 7, 73), (18, 8, 36), (19, 5, 4), (19, 6, 9), (19, 7, 127), (19, 8, 7), (19, 9, 6),
    (20, 5, 5), (20, 6, 12), (20, 7, 22), (20, 8, 5), (20, 9, 2), (20, 10, 6), (21, 6, 19),
    (21, 7, 27), (21, 8, 12), (21, 10, 6), (21, 11, 12), (22, 6, 2), (22, 7, 45), (22, 8, 45),
    (23, 6, 2), (23, 7, 13), (23, 8, 23), (23, 9, 15), (23, 10, 3), (24, 6, 4), (24, 7, 5),
    (24, 8, 43), (24, 9, 19), (24, 10, 8), (25, 6, 11), (25, 7, 21), (25, 8, 22), (25, 9, 93),
    (25, 10, 21), (25, 11, 12), (26, 6, 3), (26, 7, 20), (26, 8, 46), (26, 9, 51), (26, 10, 77),
    (26, 11, 25), (26, 12, 8), (27, 7, 20), (27, 8, 25), (27, 9, 47), (27, 10, 25), (27, 11, 73),
    (27, 12, 14), (27, 13, 3), (28, 8, 22), (28, 9, 53), (28, 10, 48), (28, 11, 15), (28, 12, 55),
    (28, 13, 33), (28, 14, 1), (29, 7, 6), (29, 8, 11), (29, 9, 85), (29, 10, 41), (29, 11, 44),
    (29, 12, 8), (29, 14, 7), (30, 8, 11), (30, 9, 24), (30, 10, 47), (30, 11, 26), (30, 12, 22),
    (30, 15, 1), (31, 7, 3), (31, 8, 1), (31, 9, 31), (31, 10, 33), (31, 11, 46), (31, 12, 12),
    (31, 13, 13), (32, 8, 1), (32, 9, 33), (32, 10, 36), (32, 11, 23), (32, 12, 89), (32, 13, 12),
    (32, 14, 34), (32, 15, 1), (33, 9, 18), (33, 10, 28), (33, 11, 27), (33, 12, 4), (33, 13, 3),
    (33, 14, 35), (33, 15, 2), (34, 9, 17), (34, 10, 33), (34, 11, 21), (34, 12, 5), (34, 13, 6),
    (34, 14, 4), (34, 15, 6), (34, 16, 3), (35, 9, 10), (35, 10, 26), (35, 11, 41), (35, 12, 13),
    (35, 13, 6), (35, 16, 3), (36, 9, 3), (36, 10, 18), (36, 11, 18), (36, 12, 19), (36, 13, 13),
    (36, 14, 20), (37, 10, 25), (37, 11, 24), (37, 12, 20), (37, 13, 16), (37, 14, 17),
    (37, 15, 2), (38, 10, 9), (38, 11, 23), (38, 12, 13), (38, 13, 4), (38, 14, 3), (38, 15, 14),
    (38, 16, 3), (39, 10, 1), (39, 11, 15), (39, 12, 27), (39, 13, 13), (40, 10, 6), (40, 11, 9),
    (40, 12, 14), (40, 13, 2), (40, 14, 3), (40, 18, 3), (41, 11, 2), (41, 12, 12), (41, 13, 13),
    (41, 14, 6), (42, 11, 19), (42, 12, 18), (42, 13, 10), (42, 14, 2), (42, 15, 2), (43, 11, 6),
    (43, 12, 6), (43, 13, 9), (43, 14, 4), (44, 11, 1), (44, 13, 10), (44, 14, 1), (44, 15, 2),
    (45, 13, 4), (45, 14, 3), (46, 12, 1), (46, 14, 2), (46, 15, 2), (47, 12, 2), (47, 13, 3),
    (47, 14, 5), (48, 13, 1), (49, 14, 3), (50, 13, 1), (50, 15, 3), (51, 14, 2), (51, 15, 1),
    (52, 15, 1), (53, 15, 2), (54, 15, 2),
];
