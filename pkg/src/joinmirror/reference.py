"""Published genus-zero BPS tables for X1 and Y1 (rows d1 = 0..10, columns d2 = 0..5)."""

from __future__ import annotations

from typing import Dict, Tuple

_X1_ROWS = """
0 120 105 105 120 90
120 2085 15690 83400 362850 1365060
105 15690 569475 9690270 107459880 901887570
105 83400 9690270 418812780 10086474180 164859436335
120 362850 107459880 10086474180 472152998265 13800385325580
90 1365060 901887570 164859436335 13800385325580 675995017391805
120 4621020 6204484125 2041590595410 286700834960805 22351196770131870
105 14399490 36701125005 20496053409240 4593254607725475 546563929916334210
105 41932200 192593575110 174405931797135 59937858896889555 10518492857890739820
120 115485075 916315955820 1297448843314125 661998422042833065 166511015537610566130
90 303166710 4015843886955 8630138044756890 6364684023911207415 2240097475662256021890
"""

_Y1_ROWS = """
0 30 0 0 0 0
105 330 105 0 0 0
120 2865 6585 2865 120 0
120 17400 151260 283755 151260 17400
105 87150 2141265 11044335 18347055 11044335
90 368670 22279830 256967580 974066175 1488072900
105 1377840 186120810 4267143150 31595446320 97322962410
120 4644030 1311908070 55405726800 729262582320 4007703642030
120 14441100 8065898475 594374999280 13050194338080 118409369639565
105 42003450 44272540830 5463083502630 191094069663765 2712537543756540
90 115593255 220759120890 44140588111590 2375090868607470 50686607599977960
"""


def _parse(text: str) -> Dict[Tuple[int, int], int]:
    table = {}
    for d1, line in enumerate(text.strip().splitlines()):
        for d2, value in enumerate(line.split()):
            table[(d1, d2)] = int(value)
    return table


BPS_X1 = _parse(_X1_ROWS)
BPS_Y1 = _parse(_Y1_ROWS)
ROWS, COLUMNS = 11, 6
