"""Source tables for the planar benchmark generator.

Classic 100-customer VRPTW layouts (columns: id, x, y, demand, ready, due,
service).  The wc-format pickup-delivery instances are derived from these by
splitting each customer demand into a delivery and a pickup part; see
gen_wc_instances.py.
"""

# Series RC1: mixed random/clustered geometry, capacity 200, horizon 240.
# RC101/RC104/RC107 share coordinates and demands and differ in windows.
RC1_GEOMETRY = """
0 40 50 0
1 25 85 20
2 22 75 30
3 22 85 10
4 20 80 40
5 20 85 20
6 18 75 20
7 15 75 20
8 15 80 10
9 10 35 20
10 10 40 30
11 8 40 40
12 8 45 20
13 5 35 10
14 5 45 10
15 2 40 20
16 0 40 20
17 0 45 20
18 44 5 20
19 42 10 40
20 42 15 10
21 40 5 10
22 40 15 40
23 38 5 30
24 38 15 10
25 35 5 20
26 95 30 30
27 95 35 20
28 92 30 10
29 90 35 10
30 88 30 10
31 88 35 20
32 87 30 10
33 85 25 10
34 85 35 30
35 67 85 20
36 65 85 40
37 65 82 10
38 62 80 30
39 60 80 10
40 60 85 30
41 58 75 20
42 55 80 10
43 55 85 20
44 55 82 10
45 52 85 20
46 50 85 30
47 50 80 10
48 48 80 10
49 48 85 40
50 45 82 10
"""

# RC101 time windows (ready, due) for the depot and customers 1..50.
RC101_WINDOWS = """
0 0 240
1 145 175
2 50 80
3 109 139
4 141 171
5 41 71
6 95 125
7 79 109
8 91 121
9 91 121
10 119 149
11 59 89
12 64 94
13 142 172
14 35 65
15 58 88
16 72 102
17 149 179
18 87 117
19 72 102
20 122 152
21 67 97
22 92 122
23 65 95
24 148 178
25 154 184
26 115 145
27 62 92
28 62 92
29 67 97
30 74 104
31 61 91
32 131 161
33 51 81
34 111 141
35 139 169
36 43 73
37 124 154
38 75 105
39 37 67
40 85 115
41 92 122
42 33 63
43 128 158
44 64 94
45 37 67
46 95 125
47 153 183
48 63 93
49 45 75
50 85 115
"""

# Series R1: uniform random geometry, capacity 200, horizon 230, service 10.
# Columns: id, x, y, demand, ready, due.
R101 = """
0 35 35 0 0 230
1 41 49 10 161 171
2 35 17 7 50 60
3 55 45 13 116 126
4 55 20 19 149 159
5 15 30 26 34 44
6 25 30 3 99 109
7 20 50 5 81 91
8 10 43 9 95 105
9 55 60 16 97 107
10 30 60 16 124 134
11 20 65 12 67 77
12 50 35 19 63 73
13 30 25 23 159 169
14 15 10 20 32 42
15 30 5 8 61 71
16 10 20 19 75 85
17 5 30 2 157 167
18 20 40 12 87 97
19 15 60 17 76 86
20 45 65 9 126 136
21 45 20 11 62 72
22 45 10 18 97 107
23 55 5 29 68 78
24 65 35 3 153 163
25 65 20 6 172 182
26 45 30 17 132 142
27 35 40 16 37 47
28 41 37 16 39 49
29 64 42 9 63 73
30 40 60 21 71 81
31 31 52 27 50 60
32 35 69 23 141 151
33 53 52 11 37 47
34 65 55 14 117 127
35 63 65 8 143 153
36 2 60 5 41 51
37 20 20 8 134 144
38 5 5 16 83 93
39 60 12 31 44 54
40 40 25 9 85 95
41 42 7 5 97 107
42 24 12 5 31 41
43 23 3 7 132 142
44 11 14 18 69 79
45 6 38 16 32 42
46 2 48 1 117 127
47 8 56 27 51 61
48 13 52 36 165 175
49 6 68 30 108 118
50 47 47 13 124 134
51 49 58 10 88 98
52 27 43 9 52 62
53 37 31 14 95 105
54 57 29 18 140 150
55 63 23 2 136 146
56 53 12 6 130 140
57 32 12 7 101 111
58 36 26 18 200 210
59 21 24 28 18 28
60 17 34 3 162 172
61 12 24 13 76 86
62 24 58 19 58 68
63 27 69 10 34 44
64 15 77 9 73 83
65 62 77 20 51 61
66 49 73 25 127 137
67 67 5 25 83 93
68 56 39 36 142 152
69 37 47 6 50 60
70 37 56 5 182 192
71 57 68 15 77 87
72 47 16 25 35 45
73 44 17 9 78 88
74 46 13 8 149 159
75 49 11 18 69 79
76 49 42 13 73 83
77 53 43 14 179 189
78 61 52 3 96 106
79 57 48 23 92 102
80 56 37 6 182 192
81 55 54 26 94 104
82 15 47 16 55 65
83 14 37 11 44 54
84 11 31 7 101 111
85 16 22 41 91 101
86 4 18 35 94 104
87 28 18 26 93 103
88 26 52 9 74 84
89 26 35 15 176 186
90 31 67 3 95 105
91 15 19 1 160 170
92 22 22 2 18 28
93 18 24 22 188 198
94 26 27 27 100 110
95 25 24 20 39 49
96 22 27 11 135 145
97 25 21 12 133 143
98 19 21 10 58 68
99 20 26 9 83 93
100 18 18 17 185 195
"""

# Series C: clustered geometry shared by the C1xx/C2xx variants.
# Columns: id, x, y, demand.
C_GEOMETRY = """
0 40 50 0
1 45 68 10
2 45 70 30
3 42 66 10
4 42 68 10
5 42 65 10
6 40 69 20
7 40 66 20
8 38 68 20
9 38 70 10
10 35 66 10
11 35 69 10
12 25 85 20
13 22 75 30
14 22 85 10
15 20 80 40
16 20 85 40
17 18 75 20
18 15 75 20
19 15 80 10
20 30 50 10
21 30 52 20
22 28 52 20
23 28 55 10
24 25 50 10
25 25 52 40
26 25 55 10
27 23 52 10
28 23 55 20
29 20 50 10
30 20 55 10
31 10 35 20
32 10 40 30
33 8 40 40
34 8 45 20
35 5 35 10
36 5 45 10
37 2 40 20
38 0 40 30
39 0 45 20
40 35 30 10
41 35 32 10
42 33 32 20
43 33 35 10
44 32 30 10
45 30 30 10
46 30 32 30
47 30 35 10
48 28 30 10
49 28 35 10
50 26 32 10
51 25 30 10
52 25 35 10
53 44 5 20
54 42 10 40
55 42 15 10
56 40 5 30
57 40 15 40
58 38 5 30
59 38 15 10
60 35 5 20
61 50 30 10
62 50 35 20
63 50 40 50
64 48 30 10
65 48 40 10
66 47 35 10
67 47 40 10
68 45 30 10
69 45 35 10
70 95 30 30
71 95 35 20
72 53 30 10
73 92 30 10
74 53 35 50
75 45 65 20
76 90 35 10
77 88 30 10
78 88 35 20
79 87 30 10
80 85 25 10
81 85 35 30
82 75 55 20
83 72 55 10
84 70 58 20
85 68 60 30
86 66 55 10
87 65 55 20
88 65 60 30
89 63 58 10
90 60 55 10
91 60 60 10
92 67 85 20
93 65 85 40
94 65 82 10
95 62 80 30
96 60 80 10
97 60 85 30
98 58 75 20
99 55 80 10
100 55 85 20
"""
