"""Writes the fixture ``.sch`` files next to this script.

The generated files are committed; rerun only when changing a design.
Every design is laid out by hand on a 2.54 mm grid.

    python tests/fixtures/make_fixtures.py
"""

from pathlib import Path

HERE = Path(__file__).resolve().parent

LIBRARY = """
<library name="fx">
<symbols>
<symbol name="R">
<wire x1="-2.54" y1="-0.889" x2="2.54" y2="-0.889" width="0.254" layer="94"/>
<wire x1="2.54" y1="-0.889" x2="2.54" y2="0.889" width="0.254" layer="94"/>
<wire x1="2.54" y1="0.889" x2="-2.54" y2="0.889" width="0.254" layer="94"/>
<wire x1="-2.54" y1="0.889" x2="-2.54" y2="-0.889" width="0.254" layer="94"/>
<text x="-3.81" y="1.4986" size="1.778" layer="95">&gt;NAME</text>
<text x="-3.81" y="-3.302" size="1.778" layer="96">&gt;VALUE</text>
<pin name="1" x="-5.08" y="0" visible="off" length="short" direction="pas" swaplevel="1"/>
<pin name="2" x="5.08" y="0" visible="off" length="short" direction="pas" swaplevel="1" rot="R180"/>
</symbol>
<symbol name="C">
<rectangle x1="-0.762" y1="-1.905" x2="-0.254" y2="1.905" layer="94"/>
<rectangle x1="0.254" y1="-1.905" x2="0.762" y2="1.905" layer="94"/>
<text x="-2.54" y="2.54" size="1.778" layer="95">&gt;NAME</text>
<text x="-2.54" y="-4.318" size="1.778" layer="96">&gt;VALUE</text>
<pin name="1" x="-2.794" y="0" visible="off" length="point" direction="pas"/>
<pin name="2" x="2.794" y="0" visible="off" length="point" direction="pas" rot="R180"/>
<wire x1="-2.794" y1="0" x2="-0.762" y2="0" width="0.1524" layer="94"/>
<wire x1="0.762" y1="0" x2="2.794" y2="0" width="0.1524" layer="94"/>
</symbol>
<symbol name="LED">
<polygon width="0.1524" layer="94">
<vertex x="-1.27" y="1.27"/>
<vertex x="1.27" y="0"/>
<vertex x="-1.27" y="-1.27"/>
</polygon>
<wire x1="1.27" y1="1.27" x2="1.27" y2="-1.27" width="0.254" layer="94"/>
<wire x1="1.778" y1="1.524" x2="3.048" y2="2.794" width="0.1524" layer="94" curve="-45"/>
<text x="-2.54" y="2.54" size="1.778" layer="95">&gt;NAME</text>
<text x="-2.54" y="-3.81" size="1.778" layer="96">&gt;VALUE</text>
<pin name="A" x="-3.81" y="0" visible="off" length="short" direction="pas"/>
<pin name="C" x="3.81" y="0" visible="off" length="short" direction="pas" rot="R180"/>
</symbol>
<symbol name="NPN">
<wire x1="0" y1="-2.54" x2="0" y2="2.54" width="0.254" layer="94"/>
<wire x1="0" y1="0.762" x2="2.54" y2="2.54" width="0.1524" layer="94"/>
<wire x1="0" y1="-0.762" x2="2.54" y2="-2.54" width="0.1524" layer="94"/>
<circle x="1.016" y="0" radius="3.048" width="0.1524" layer="94"/>
<text x="5.08" y="1.27" size="1.778" layer="95">&gt;NAME</text>
<text x="5.08" y="-1.27" size="1.778" layer="96">&gt;VALUE</text>
<pin name="B" x="-2.54" y="0" visible="off" length="short" direction="pas"/>
<pin name="C" x="2.54" y="5.08" visible="off" length="short" direction="pas" rot="R270"/>
<pin name="E" x="2.54" y="-5.08" visible="off" length="short" direction="pas" rot="R90"/>
</symbol>
<symbol name="OPAMP">
<wire x1="-5.08" y1="5.08" x2="-5.08" y2="-5.08" width="0.4064" layer="94"/>
<wire x1="-5.08" y1="-5.08" x2="5.08" y2="0" width="0.4064" layer="94"/>
<wire x1="5.08" y1="0" x2="-5.08" y2="5.08" width="0.4064" layer="94"/>
<text x="2.54" y="3.175" size="1.778" layer="95">&gt;NAME</text>
<text x="2.54" y="-5.08" size="1.778" layer="96">&gt;VALUE</text>
<pin name="-IN" x="-7.62" y="2.54" visible="pad" length="short" direction="in"/>
<pin name="+IN" x="-7.62" y="-2.54" visible="pad" length="short" direction="in"/>
<pin name="OUT" x="7.62" y="0" visible="pad" length="short" direction="out" rot="R180"/>
</symbol>
<symbol name="PWR">
<text x="1.27" y="3.175" size="1.778" layer="95">&gt;NAME</text>
<pin name="V+" x="0" y="7.62" visible="pad" length="middle" direction="pwr" rot="R270"/>
<pin name="V-" x="0" y="-7.62" visible="pad" length="middle" direction="pwr" rot="R90"/>
</symbol>
<symbol name="GND">
<wire x1="-1.905" y1="0" x2="1.905" y2="0" width="0.254" layer="94"/>
<wire x1="-1.27" y1="-0.635" x2="1.27" y2="-0.635" width="0.254" layer="94"/>
<wire x1="-0.635" y1="-1.27" x2="0.635" y2="-1.27" width="0.254" layer="94"/>
<text x="-2.54" y="-4.064" size="1.778" layer="96">&gt;VALUE</text>
<pin name="GND" x="0" y="2.54" visible="off" length="short" direction="sup" rot="R270"/>
</symbol>
<symbol name="VCC">
<wire x1="-1.905" y1="0" x2="1.905" y2="0" width="0.254" layer="94"/>
<text x="-2.54" y="1.016" size="1.778" layer="96">&gt;VALUE</text>
<pin name="VCC" x="0" y="-2.54" visible="off" length="short" direction="sup" rot="R90"/>
</symbol>
<symbol name="CONN3">
<wire x1="-2.54" y1="5.08" x2="2.54" y2="5.08" width="0.254" layer="94"/>
<wire x1="2.54" y1="5.08" x2="2.54" y2="-5.08" width="0.254" layer="94"/>
<wire x1="2.54" y1="-5.08" x2="-2.54" y2="-5.08" width="0.254" layer="94"/>
<wire x1="-2.54" y1="-5.08" x2="-2.54" y2="5.08" width="0.254" layer="94"/>
<text x="-2.54" y="5.842" size="1.778" layer="95">&gt;NAME</text>
<text x="-2.54" y="-7.62" size="1.778" layer="96">&gt;VALUE</text>
<pin name="1" x="7.62" y="2.54" visible="pad" length="middle" direction="pas" rot="R180"/>
<pin name="2" x="7.62" y="0" visible="pad" length="middle" direction="pas" rot="R180"/>
<pin name="3" x="7.62" y="-2.54" visible="pad" length="middle" direction="pas" rot="R180"/>
</symbol>
<symbol name="MCU8">
<rectangle x1="-7.62" y1="-7.62" x2="7.62" y2="7.62" layer="94" rot="R0"/>
<text x="-7.62" y="8.382" size="1.778" layer="95">&gt;NAME</text>
<text x="-7.62" y="-10.16" size="1.778" layer="96">&gt;VALUE</text>
<pin name="VDD" x="-12.7" y="5.08" length="middle" direction="pwr"/>
<pin name="PA0" x="-12.7" y="2.54" length="middle"/>
<pin name="PA1" x="-12.7" y="0" length="middle"/>
<pin name="PA2" x="-12.7" y="-2.54" length="middle"/>
<pin name="GND" x="-12.7" y="-5.08" length="middle" direction="pwr"/>
<pin name="PB0" x="12.7" y="5.08" length="middle" rot="R180"/>
<pin name="PB1" x="12.7" y="2.54" length="middle" rot="R180"/>
<pin name="RST" x="12.7" y="-5.08" length="middle" direction="in" rot="R180" function="dot"/>
</symbol>
</symbols>
<devicesets>
<deviceset name="RESISTOR" prefix="R" uservalue="yes">
<gates><gate name="G$1" symbol="R" x="0" y="0"/></gates>
<devices><device name="0603" package="R0603">
<connects><connect gate="G$1" pin="1" pad="1"/><connect gate="G$1" pin="2" pad="2"/></connects>
<technologies><technology name=""/></technologies></device></devices>
</deviceset>
<deviceset name="CAPACITOR" prefix="C" uservalue="yes">
<gates><gate name="G$1" symbol="C" x="0" y="0"/></gates>
<devices><device name="0603" package="C0603">
<connects><connect gate="G$1" pin="1" pad="1"/><connect gate="G$1" pin="2" pad="2"/></connects>
<technologies><technology name=""/></technologies></device></devices>
</deviceset>
<deviceset name="LED" prefix="D" uservalue="yes">
<gates><gate name="G$1" symbol="LED" x="0" y="0"/></gates>
<devices><device name="0805" package="LED0805">
<connects><connect gate="G$1" pin="A" pad="A"/><connect gate="G$1" pin="C" pad="K"/></connects>
<technologies><technology name=""/></technologies></device></devices>
</deviceset>
<deviceset name="NPN" prefix="Q" uservalue="yes">
<gates><gate name="G$1" symbol="NPN" x="0" y="0"/></gates>
<devices><device name="SOT23" package="SOT23">
<connects><connect gate="G$1" pin="B" pad="1"/><connect gate="G$1" pin="C" pad="3"/><connect gate="G$1" pin="E" pad="2"/></connects>
<technologies><technology name=""/></technologies></device></devices>
</deviceset>
<deviceset name="LM358" prefix="IC">
<gates>
<gate name="A" symbol="OPAMP" x="0" y="0"/>
<gate name="B" symbol="OPAMP" x="0" y="-20.32"/>
<gate name="P" symbol="PWR" x="20.32" y="0"/>
</gates>
<devices><device name="D" package="SO8">
<connects>
<connect gate="A" pin="-IN" pad="2"/><connect gate="A" pin="+IN" pad="3"/><connect gate="A" pin="OUT" pad="1"/>
<connect gate="B" pin="-IN" pad="6"/><connect gate="B" pin="+IN" pad="5"/><connect gate="B" pin="OUT" pad="7"/>
<connect gate="P" pin="V+" pad="8"/><connect gate="P" pin="V-" pad="4"/>
</connects>
<technologies><technology name=""/></technologies></device></devices>
</deviceset>
<deviceset name="GND" prefix="SUPPLY">
<gates><gate name="1" symbol="GND" x="0" y="0"/></gates>
<devices><device name=""/></devices>
</deviceset>
<deviceset name="VCC" prefix="SUPPLY">
<gates><gate name="1" symbol="VCC" x="0" y="0"/></gates>
<devices><device name=""/></devices>
</deviceset>
<deviceset name="HEADER-3" prefix="J" uservalue="yes">
<gates><gate name="G$1" symbol="CONN3" x="0" y="0"/></gates>
<devices><device name="" package="1X03">
<connects><connect gate="G$1" pin="1" pad="1"/><connect gate="G$1" pin="2" pad="2"/><connect gate="G$1" pin="3" pad="3"/></connects>
<technologies><technology name=""/></technologies></device></devices>
</deviceset>
<deviceset name="MCU8" prefix="U" uservalue="yes">
<gates><gate name="G$1" symbol="MCU8" x="0" y="0"/></gates>
<devices><device name="SO8" package="SO8">
<connects>
<connect gate="G$1" pin="VDD" pad="1"/><connect gate="G$1" pin="PA0" pad="2"/><connect gate="G$1" pin="PA1" pad="3"/>
<connect gate="G$1" pin="PA2" pad="4"/><connect gate="G$1" pin="GND" pad="8"/><connect gate="G$1" pin="PB0" pad="7"/>
<connect gate="G$1" pin="PB1" pad="6"/><connect gate="G$1" pin="RST" pad="5"/>
</connects>
<technologies><technology name=""/></technologies></device></devices>
</deviceset>
</devicesets>
</library>
"""

# pin offsets (unrotated) for wiring helpers
PINS = {
    "RESISTOR": {"1": (-5.08, 0), "2": (5.08, 0)},
    "CAPACITOR": {"1": (-2.794, 0), "2": (2.794, 0)},
    "LED": {"A": (-3.81, 0), "C": (3.81, 0)},
    "NPN": {"B": (-2.54, 0), "C": (2.54, 5.08), "E": (2.54, -5.08)},
    "OPAMP": {"-IN": (-7.62, 2.54), "+IN": (-7.62, -2.54), "OUT": (7.62, 0)},
    "PWR": {"V+": (0, 7.62), "V-": (0, -7.62)},
    "GND": {"GND": (0, 2.54)},
    "VCC": {"VCC": (0, -2.54)},
    "HEADER-3": {"1": (7.62, 2.54), "2": (7.62, 0), "3": (7.62, -2.54)},
    "MCU8": {"VDD": (-12.7, 5.08), "PA0": (-12.7, 2.54), "PA1": (-12.7, 0), "PA2": (-12.7, -2.54),
             "GND": (-12.7, -5.08), "PB0": (12.7, 5.08), "PB1": (12.7, 2.54), "RST": (12.7, -5.08)},
}
DEVICE = {"RESISTOR": "0603", "CAPACITOR": "0603", "LED": "0805", "NPN": "SOT23", "LM358": "D",
          "GND": "", "VCC": "", "HEADER-3": "", "MCU8": "SO8"}
GATE_SYMBOL = {("LM358", "A"): "OPAMP", ("LM358", "B"): "OPAMP", ("LM358", "P"): "PWR"}
DEFAULT_GATE = {"GND": "1", "VCC": "1"}


def rotate(dx, dy, rot, mirror):
    if mirror:
        dx = -dx
    for _ in range(rot // 90):
        dx, dy = -dy, dx
    return dx, dy


class Design:
    def __init__(self, version="9.6.2"):
        self.version = version
        self.parts = []  # (name, deviceset, value)
        self.sheets = [dict(instances=[], nets={}, plain=[])]
        self.placed = {}  # (part, gate) -> (deviceset, x, y, rot, mirror)

    @property
    def sheet(self):
        return self.sheets[-1]

    def new_sheet(self):
        self.sheets.append(dict(instances=[], nets={}, plain=[]))

    def part(self, name, deviceset, value=None):
        self.parts.append((name, deviceset, value))

    def place(self, name, x, y, rot=0, mirror=False, gate=None, smashed=None):
        ds = next(d for n, d, _ in self.parts if n == name)
        gate = gate or DEFAULT_GATE.get(ds, "G$1")
        self.placed[(name, gate)] = (ds, x, y, rot, mirror)
        self.sheet["instances"].append((name, gate, x, y, rot, mirror, smashed))

    def pin_xy(self, name, gate, pin):
        ds, x, y, rot, mirror = self.placed[(name, gate)]
        key = GATE_SYMBOL.get((ds, gate), ds)
        dx, dy = rotate(*PINS[key][pin], rot, mirror)
        return round(x + dx, 4), round(y + dy, 4)

    def connect(self, net, *refs, wire=True, label=False):
        """Join pins; each ref is ``(part, pin)`` or ``(part, gate, pin)``.

        Wires run as an L from every pin to the first pin of the group.
        """
        segs = self.sheet["nets"].setdefault(net, [])
        refs = [(r[0], self._gate(r[0]), r[1]) if len(r) == 2 else r for r in refs]
        wires = []
        if wire:
            x0, y0 = self.pin_xy(*refs[0])
            for ref in refs[1:]:
                x1, y1 = self.pin_xy(*ref)
                if x0 != x1:
                    wires.append((x1, y1, x0, y1))
                if y0 != y1:
                    wires.append((x0, y1, x0, y0))
        labels = []
        if label and refs:
            lx, ly = self.pin_xy(*refs[0])
            labels.append((lx + 1.27, ly + 0.762))
        segs.append((refs, wires, labels))

    def _gate(self, name):
        ds = next(d for n, d, _ in self.parts if n == name)
        return DEFAULT_GATE.get(ds, "G$1")

    def text(self, x, y, content, size=2.54, rot=0):
        rs = f' rot="R{rot}"' if rot else ""
        self.sheet["plain"].append(f'<text x="{x}" y="{y}" size="{size}" layer="97"{rs}>{content}</text>')

    def xml(self):
        out = ['<?xml version="1.0" encoding="utf-8"?>',
               '<!DOCTYPE eagle SYSTEM "eagle.dtd">',
               f'<eagle version="{self.version}">',
               "<drawing>",
               '<settings><setting alwaysvectorfont="no"/></settings>',
               '<grid distance="0.1" unitdist="inch" unit="inch"/>',
               '<layers><layer number="91" name="Nets" color="2" fill="1" visible="yes" active="yes"/>'
               '<layer number="94" name="Symbols" color="4" fill="1" visible="yes" active="yes"/></layers>',
               "<schematic>",
               "<libraries>", LIBRARY.strip(), "</libraries>",
               '<classes><class number="0" name="default" width="0" drill="0"/></classes>',
               "<parts>"]
        for name, ds, value in self.parts:
            v = f' value="{value}"' if value is not None else ""
            out.append(f'<part name="{name}" library="fx" deviceset="{ds}" device="{DEVICE[ds]}"{v}/>')
        out.append("</parts>")
        out.append("<sheets>")
        for sheet in self.sheets:
            out.append("<sheet>")
            out.append("<plain>" + "".join(sheet["plain"]) + "</plain>")
            out.append("<instances>")
            for name, gate, x, y, rot, mirror, smashed in sheet["instances"]:
                r = ("M" if mirror else "") + f"R{rot}"
                rs = f' rot="{r}"' if r != "R0" else ""
                if smashed:
                    out.append(f'<instance part="{name}" gate="{gate}" x="{x}" y="{y}"{rs} smashed="yes">')
                    for aname, ax, ay, layer in smashed:
                        out.append(f'<attribute name="{aname}" x="{ax}" y="{ay}" size="1.778" layer="{layer}"/>')
                    out.append("</instance>")
                else:
                    out.append(f'<instance part="{name}" gate="{gate}" x="{x}" y="{y}"{rs}/>')
            out.append("</instances>")
            out.append("<busses/>")
            out.append("<nets>")
            for net, segs in sheet["nets"].items():
                out.append(f'<net name="{net}" class="0">')
                for refs, wires, labels in segs:
                    out.append("<segment>")
                    for part, gate, pin in refs:
                        out.append(f'<pinref part="{part}" gate="{gate}" pin="{pin}"/>')
                    for x1, y1, x2, y2 in wires:
                        out.append(f'<wire x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" width="0.1524" layer="91"/>')
                    for lx, ly in labels:
                        out.append(f'<label x="{lx}" y="{ly}" size="1.778" layer="95"/>')
                    out.append("</segment>")
                out.append("</net>")
            out.append("</nets>")
            out.append("</sheet>")
        out.append("</sheets>")
        out.append("</schematic>")
        out.append("</drawing>")
        out.append("</eagle>")
        return "\n".join(out) + "\n"


def divider():
    d = Design()
    d.part("SUPPLY1", "VCC", "VCC")
    d.part("R1", "RESISTOR", "10k")
    d.part("R2", "RESISTOR", "4k7")
    d.part("SUPPLY2", "GND")
    d.place("SUPPLY1", 20.32, 40.64)
    d.place("R1", 20.32, 27.94, rot=90)
    d.place("R2", 20.32, 12.7, rot=90)
    d.place("SUPPLY2", 20.32, 2.54)
    d.connect("VCC", ("SUPPLY1", "VCC"), ("R1", "2"))
    d.connect("VOUT", ("R1", "1"), ("R2", "2"), label=True)
    d.connect("GND", ("R2", "1"), ("SUPPLY2", "GND"))
    d.text(30.48, 20.32, "DIVIDER")
    return d


def rc_filter():
    d = Design()
    d.part("J1", "HEADER-3", "IN")
    d.part("R1", "RESISTOR", "1k")
    d.part("C1", "CAPACITOR", "100n")
    d.part("J2", "HEADER-3", "OUT")
    d.part("GND1", "GND")
    d.place("J1", 0, 20.32)
    d.place("R1", 22.86, 22.86)
    d.place("C1", 35.56, 12.7, rot=90)
    d.place("J2", 60.96, 20.32, mirror=True)
    d.place("GND1", 35.56, 0)
    d.connect("IN", ("J1", "1"), ("R1", "1"), label=True)
    d.connect("OUT", ("R1", "2"), ("C1", "2"), ("J2", "1"), label=True)
    d.connect("GND", ("C1", "1"), ("GND1", "GND"), ("J1", "3"), ("J2", "3"))
    return d


def led_driver():
    d = Design()
    d.part("SUPPLY1", "VCC", "5V")
    d.part("R1", "RESISTOR", "330")
    d.part("D1", "LED", "RED")
    d.part("Q1", "NPN", "BC847")
    d.part("R2", "RESISTOR", "10k")
    d.part("J1", "HEADER-3", "CTRL")
    d.part("GND1", "GND")
    d.place("SUPPLY1", 40.64, 58.42)
    d.place("R1", 40.64, 45.72, rot=270)
    d.place("D1", 40.64, 30.48, rot=270)
    d.place("Q1", 38.1, 17.78)
    d.place("R2", 22.86, 17.78)
    d.place("J1", 0, 17.78)
    d.place("GND1", 40.64, 2.54)
    d.connect("VCC", ("SUPPLY1", "VCC"), ("R1", "1"))
    d.connect("N$1", ("R1", "2"), ("D1", "A"))
    d.connect("N$2", ("D1", "C"), ("Q1", "C"))
    d.connect("BASE", ("Q1", "B"), ("R2", "2"))
    d.connect("CTRL", ("R2", "1"), ("J1", "2"), label=True)
    d.connect("GND", ("Q1", "E"), ("GND1", "GND"))
    d.connect("GND", ("J1", "3"), ("GND1", "GND"))
    return d


def dual_opamp():
    d = Design()
    d.part("IC1", "LM358")
    d.part("R1", "RESISTOR", "10k")
    d.part("R2", "RESISTOR", "100k")
    d.part("R3", "RESISTOR", "10k")
    d.part("R4", "RESISTOR", "100k")
    d.part("SUPPLY1", "VCC", "+12V")
    d.part("GND1", "GND")
    d.part("GND2", "GND")
    d.place("IC1", 30.48, 40.64, gate="A")
    d.place("IC1", 30.48, 10.16, gate="B")
    d.place("IC1", 66.04, 25.4, gate="P")
    d.place("R1", 12.7, 43.18)
    d.place("R2", 30.48, 53.34)
    d.place("R3", 12.7, 12.7)
    d.place("R4", 30.48, 22.86)
    d.place("SUPPLY1", 66.04, 40.64)
    d.place("GND1", 66.04, 10.16)
    d.place("GND2", 0, 25.4)
    d.connect("INA", ("R1", "2"), ("IC1", "A", "-IN"), ("R2", "1"))
    d.connect("OUTA", ("R2", "2"), ("IC1", "A", "OUT"), ("R3", "1"), label=True)
    d.connect("INB", ("R3", "2"), ("IC1", "B", "-IN"), ("R4", "1"))
    d.connect("OUTB", ("R4", "2"), ("IC1", "B", "OUT"), label=True)
    d.connect("GND", ("R1", "1"), ("GND2", "GND"), ("IC1", "A", "+IN"), ("IC1", "B", "+IN"))
    d.connect("VCC", ("SUPPLY1", "VCC"), ("IC1", "P", "V+"))
    d.connect("GND", ("IC1", "P", "V-"), ("GND1", "GND"))
    return d


def two_sheet():
    d = Design()
    d.part("R1", "RESISTOR", "1k")
    d.part("R2", "RESISTOR", "2k")
    d.part("GND1", "GND")
    d.part("R3", "RESISTOR", "3k")
    d.part("C1", "CAPACITOR", "1u")
    d.part("GND2", "GND")
    d.place("R1", 10.16, 20.32)
    d.place("R2", 30.48, 20.32)
    d.place("GND1", 45.72, 7.62)
    d.connect("SIG", ("R1", "2"), ("R2", "1"), label=True)
    d.connect("GND", ("R2", "2"), ("GND1", "GND"))
    d.new_sheet()
    d.place("R3", 10.16, 20.32)
    d.place("C1", 30.48, 20.32)
    d.place("GND2", 45.72, 7.62)
    d.connect("SIG", ("R3", "2"), ("C1", "1"), label=True)
    d.connect("GND", ("C1", "2"), ("GND2", "GND"))
    return d


def rotations():
    d = Design()
    specs = [(0, False), (90, False), (180, False), (270, False),
             (0, True), (90, True), (180, True), (270, True)]
    for i, (rot, mirror) in enumerate(specs):
        d.part(f"R{i + 1}", "RESISTOR", f"{i + 1}k")
        d.place(f"R{i + 1}", 15.24 + 20.32 * (i % 4), 15.24 + 25.4 * (i // 4), rot=rot, mirror=mirror)
    d.part("Q1", "NPN", "MMBT3904")
    d.place("Q1", 101.6, 27.94, rot=90, mirror=True)
    for i in range(0, 8, 2):
        d.connect(f"N$R{i}", (f"R{i + 1}", "2"), (f"R{i + 2}", "1"))
    d.connect("QB", ("Q1", "B"), ("R8", "2"), ("R4", "2"))
    d.connect("QE", ("Q1", "E"), ("R1", "1"), wire=False)
    return d


def mcu_board():
    d = Design()
    d.part("U1", "MCU8", "ATTINY")
    d.part("C1", "CAPACITOR", "100n")
    d.part("C2", "CAPACITOR", "10u")
    d.part("R1", "RESISTOR", "10k")
    d.part("R2", "RESISTOR", "470")
    d.part("R3", "RESISTOR", "470")
    d.part("D1", "LED", "GREEN")
    d.part("D2", "LED", "YELLOW")
    d.part("J1", "HEADER-3", "PROG")
    d.part("SUPPLY1", "VCC", "3V3")
    d.part("SUPPLY2", "VCC", "3V3")
    d.part("GND1", "GND")
    d.part("GND2", "GND")
    d.part("GND3", "GND")
    d.part("GND4", "GND")
    d.place("U1", 50.8, 40.64)
    d.place("C1", 17.78, 48.26, rot=90)
    d.place("C2", 7.62, 48.26, rot=90)
    d.place("SUPPLY1", 17.78, 63.5)
    d.place("GND1", 17.78, 35.56)
    d.place("GND4", 7.62, 35.56)
    d.place("R1", 78.74, 27.94, rot=90)
    d.place("SUPPLY2", 78.74, 40.64)
    d.place("R2", 78.74, 55.88)
    d.place("D1", 96.52, 55.88)
    d.place("GND2", 106.68, 45.72)
    d.place("R3", 22.86, 15.24)
    d.place("D2", 38.1, 15.24)
    d.place("GND3", 48.26, 5.08)
    d.place("J1", 0, 20.32)
    d.connect("3V3", ("U1", "VDD"), ("C1", "2"), ("C2", "2"), ("SUPPLY1", "VCC"), label=True)
    d.connect("GND", ("U1", "GND"), ("C1", "1"), ("GND1", "GND"))
    d.connect("GND", ("C2", "1"), ("GND4", "GND"))
    d.connect("RESET", ("U1", "RST"), ("R1", "2"), label=True)
    d.connect("3V3", ("R1", "1"), ("SUPPLY2", "VCC"), wire=False)
    d.connect("LED1", ("U1", "PB0"), ("R2", "1"))
    d.connect("N$1", ("R2", "2"), ("D1", "A"))
    d.connect("GND", ("D1", "C"), ("GND2", "GND"))
    d.connect("LED2", ("U1", "PA2"), ("R3", "2"))
    d.connect("N$2", ("R3", "1"), ("D2", "A"), wire=False)
    d.connect("GND", ("D2", "C"), ("GND3", "GND"))
    d.connect("MOSI", ("J1", "1"), ("U1", "PA0"), label=True)
    d.connect("SCK", ("J1", "2"), ("U1", "PA1"), label=True)
    d.connect("GND", ("J1", "3"), ("GND3", "GND"))
    return d


def resistor_ladder():
    d = Design()
    n = 20
    for i in range(n):
        d.part(f"R{i + 1}", "RESISTOR", "10k" if i % 2 == 0 else "20k")
    for i in range(10):
        d.place(f"R{2 * i + 1}", 12.7 + 17.78 * i, 30.48)
        d.place(f"R{2 * i + 2}", 7.62 + 17.78 * i + 12.7, 17.78, rot=90)
    for i in range(10):
        nodes = [(f"R{2 * i + 1}", "2"), (f"R{2 * i + 2}", "2")]
        if i + 1 < 10:
            nodes.append((f"R{2 * i + 3}", "1"))
        d.connect(f"B{i}", *nodes, label=(i % 3 == 0))
    d.connect("GND", *[(f"R{2 * i + 2}", "1") for i in range(10)])
    d.connect("IN", ("R1", "1"), wire=False)
    return d


def rc_array():
    """20 RC pairs on a 5 x 4 grid: 40 symbols."""
    d = Design()
    for i in range(20):
        d.part(f"R{i + 1}", "RESISTOR", f"{(i % 5 + 1) * 10}k")
        d.part(f"C{i + 1}", "CAPACITOR", f"{(i // 5 + 1) * 10}n")
    for i in range(20):
        col, row = i % 5, i // 5
        x, y = 10.16 + col * 30.48, 10.16 + row * 20.32
        d.place(f"R{i + 1}", x, y)
        d.place(f"C{i + 1}", x + 12.7, y - 5.08, rot=90)
    for i in range(20):
        d.connect(f"F{i + 1}", (f"R{i + 1}", "2"), (f"C{i + 1}", "2"))
    for row in range(4):
        d.connect(f"ROW{row}", *[(f"R{row * 5 + c + 1}", "1") for c in range(5)], label=True)
    d.connect("GND", *[(f"C{i + 1}", "1") for i in range(20)], wire=False)
    return d


def smashed_labels():
    d = Design()
    d.part("R1", "RESISTOR", "1M")
    d.part("R2", "RESISTOR", "2M2")
    d.part("C1", "CAPACITOR", "22p")
    d.part("Q1", "NPN", "2N2222")
    d.place("R1", 15.24, 30.48, rot=90, smashed=[("NAME", 17.78, 33.02, 95), ("VALUE", 17.78, 27.94, 96)])
    d.place("R2", 30.48, 38.1, smashed=[("NAME", 27.94, 40.64, 95), ("VALUE", 27.94, 34.29, 96)])
    d.place("C1", 45.72, 25.4, rot=270)
    d.place("Q1", 48.26, 53.34, rot=180)
    d.connect("BIAS", ("R1", "2"), ("R2", "1"), label=True)
    d.connect("BIAS", ("Q1", "B"), ("R2", "1"))
    d.connect("COL", ("R2", "2"), ("C1", "1"), ("Q1", "C"), label=True)
    d.connect("EMIT", ("R1", "1"), ("C1", "2"), ("Q1", "E"))
    d.text(5.08, 5.08, "REV A")
    d.text(60.96, 5.08, "NOTE: 5%", size=1.778, rot=90)
    return d


DESIGNS = {
    "divider": divider,
    "rc_filter": rc_filter,
    "led_driver": led_driver,
    "dual_opamp": dual_opamp,
    "two_sheet": two_sheet,
    "rotations": rotations,
    "mcu_board": mcu_board,
    "resistor_ladder": resistor_ladder,
    "rc_array": rc_array,
    "smashed_labels": smashed_labels,
}


def main():
    for name, build in DESIGNS.items():
        (HERE / f"{name}.sch").write_text(build().xml(), encoding="utf-8")


if __name__ == "__main__":
    main()
