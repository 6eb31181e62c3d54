"""Generate the committed test fixtures: 50-record corpus, 20-query suite,
synthetic ratings, and the golden augmented text for the Dix record.

Run from the repo root: python3 tools/make_fixtures.py
"""

import csv
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from provsearch.corpus import CSV_HEADER, augment, parse_records  # noqa: E402

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"

HD = "http://digi.ub.uni-heidelberg.de/diglit"

# record_id, artist, title, object_type, material, dimensions, auction_house,
# sale_date, catalogue_number, source_url
RECORDS = [
    # planted targets for the Specific queries
    ("D1", "Dix, Otto",
     "Mutter und Kind. Vor efeuumranktem, dunklem Mauerwerk Kniestück einer frontalsitzenden blonden Frau mit dunkler geöffneter Jacke. Signiert rechts unten: O D 1924. Oel auf Leinwand.",
     "Gemälde", "Öl auf Leinwand", "76 cm x 70 cm", "Fischer", "1939-06-30", "174",
     f"{HD}/fischer1939_06_30"),
    ("L1", "Liebermann, Max", "Badende Knaben am Strand, signiert unten links",
     "Zeichnung", "Kohlezeichnung, signiert", "30 cm x 44 cm", "Cassirer", "1936-03-12", "88",
     f"{HD}/cassirer1936_03_12"),
    ("L2", "Liebermann, Max", "Reiter am Meer, signiert und datiert",
     "Zeichnung", "Kohlezeichnung, signiert", "28 cm x 40 cm", "Graupe", "1935-10-08", "121",
     f"{HD}/graupe1935_10_08"),
    ("R1", "Rembrandt",
     "Bildnis eines Polen mit hoher goldgeschmückter Samtmütze, unter der das gelockte schwarze Haar herausquillt. Um den Hals zweireihige Goldkette mit Medaillon.",
     "Gemälde", "Holz", "65 cm x 46 cm", "Hahn (Heinrich)", "1944-05-17", "12", ""),
    ("R2", "Rembrandt", "Männliches Bildnis, Brustbild nach links",
     "Gemälde", "Öl auf Leinwand", "58 cm x 47 cm", "Hahn (Heinrich)", "1944-05-17", "13", ""),
    ("DU1", "Dürer, Albrecht", "Ritter, Tod und Teufel. Radierung, ausgezeichneter Druck",
     "Radierung", "Kupferstich", "24 cm x 19 cm", "Boerner", "1937-04-22", "301",
     f"{HD}/boerner1937_04_22"),
    ("DU2", "Dürer, Albrecht", "Melancholie. Radierung, Sammlerstempel verso",
     "Radierung", "Kupferstich", "24 cm x 18 cm", "Boerner", "1937-04-22", "302",
     f"{HD}/boerner1937_04_22"),
    ("N1", "Nolde, Emil", "Meer mit rotem Himmel, Aquarell",
     "Aquarell", "Aquarell auf Japanpapier", "34 cm x 46 cm", "Lange", "1938-11-03", "55",
     f"{HD}/lange1938_11_03"),
    ("N2", "Nolde, Emil", "Blumengarten mit Figuren, Aquarell",
     "Aquarell", "Aquarell", "33 cm x 45 cm", "Lange", "1938-11-03", "56",
     f"{HD}/lange1938_11_03"),
    ("F1", "Friedrich, Caspar David", "Mondaufgang am Meer mit zwei Figuren",
     "Gemälde", "Öl auf Leinwand", "55 cm x 71 cm", "Lempertz", "1941-02-19", "7",
     f"{HD}/lempertz1941_02_19"),
    ("B1", "Barlach, Ernst", "Der Rächer, Bronzeguss",
     "Plastik", "Bronze", "44 cm hoch", "Ball (Hermann)", "1932-05-09", "210", ""),
    ("B2", "Barlach, Ernst", "Lesender Klosterschüler, Bronzeguss",
     "Plastik", "Bronze", "36 cm hoch", "Ball (Hermann)", "1932-05-09", "211", ""),
    ("K1", "Kollwitz, Käthe", "Mutter mit Kind über der Schulter, Lithographie",
     "Lithographie", "Lithographie", "31 cm x 24 cm", "Graupe", "1935-10-08", "145",
     f"{HD}/graupe1935_10_08"),
    # planted targets for the Vague/Broad queries
    ("V1", "Guardi, Francesco", "Ansicht von Venedig mit dem Canal Grande, Gouache",
     "Gouache", "Gouache", "22 cm x 34 cm", "Helbing", "1933-06-14", "61",
     f"{HD}/helbing1933_06_14"),
    ("V2", "Unbekannt", "Venedig, die Piazzetta bei Abendlicht, Gouache",
     "Gouache", "Gouache", "20 cm x 30 cm", "Helbing", "1933-06-14", "62",
     f"{HD}/helbing1933_06_14"),
    ("V3", "Italienische Schule", "Italienische Schule des 15. Jahrhunderts, Studie eines Heiligen, Federzeichnung",
     "Zeichnung", "Feder in Braun", "19 cm x 14 cm", "Boerner", "1937-04-22", "310",
     f"{HD}/boerner1937_04_22"),
    ("V4", "Marcks, Gerhard", "Stehende weibliche Figur, Gebrannter Ton",
     "Plastik", "Gebrannter Ton", "40 cm hoch", "Berliner Auktionshaus", "1940-09-25", "77", ""),
    ("V5", "Sintenis, Renée", "Junges Fohlen, Gebrannter Ton",
     "Plastik", "Gebrannter Ton", "22 cm hoch", "Berliner Auktionshaus", "1940-09-25", "78", ""),
    ("V6", "Leibl, Wilhelm", "Damenbildnis mit Hut und Schleier",
     "Gemälde", "Öl auf Holz", "41 cm x 33 cm", "Helbing", "1933-06-14", "19",
     f"{HD}/helbing1933_06_14"),
    ("V7", "Schuch, Carl", "Blumenstillleben mit Rosen und Pfingstrosen",
     "Gemälde", "Öl auf Leinwand", "50 cm x 61 cm", "Lempertz", "1941-02-19", "22",
     f"{HD}/lempertz1941_02_19"),
    ("V8", "Compton, Edward Theodore", "Blick auf die Alpen bei Garmisch",
     "Gemälde", "Öl auf Leinwand", "60 cm x 90 cm", "Weinmüller", "1942-07-30", "96",
     f"{HD}/weinmueller1942_07_30"),
    # filler records
    ("X01", "Menzel, Adolph von", "Studie eines Soldaten, Bleistift",
     "Zeichnung", "Bleistift", "18 cm x 12 cm", "Cassirer", "1936-03-12", "90",
     f"{HD}/cassirer1936_03_12"),
    ("X02", "Spitzweg, Carl", "Der Bücherwurm in der Bibliothek",
     "Gemälde", "Öl auf Leinwand", "49 cm x 27 cm", "Weinmüller", "1942-07-30", "31",
     f"{HD}/weinmueller1942_07_30"),
    ("X03", "Corinth, Lovis", "Walchensee im Winter",
     "Gemälde", "Öl auf Leinwand", "60 cm x 80 cm", "Cassirer", "1936-03-12", "12",
     f"{HD}/cassirer1936_03_12"),
    ("X04", "Slevogt, Max", "Papageienmann im Frankfurter Zoo",
     "Gemälde", "Öl auf Leinwand", "64 cm x 48 cm", "Paffrath", "1938-02-11", "41", ""),
    ("X05", "Thoma, Hans", "Schwarzwaldtal mit Bach",
     "Gemälde", "Öl auf Pappe", "45 cm x 60 cm", "Helbing", "1933-06-14", "25",
     f"{HD}/helbing1933_06_14"),
    ("X06", "Feuerbach, Anselm", "Iphigenie, Studienkopf",
     "Gemälde", "Öl auf Leinwand", "52 cm x 42 cm", "Lempertz", "1941-02-19", "9",
     f"{HD}/lempertz1941_02_19"),
    ("X07", "Schmidt-Rottluff, Karl", "Häuser am Kanal, Holzschnitt",
     "Holzschnitt", "Holzschnitt", "39 cm x 50 cm", "Fischer", "1939-06-30", "188",
     f"{HD}/fischer1939_06_30"),
    ("X08", "Klee, Paul", "Vogelgarten, farbige Kreide",
     "Zeichnung", "Farbige Kreide", "24 cm x 31 cm", "Fischer", "1939-06-30", "190",
     f"{HD}/fischer1939_06_30"),
    ("X09", "Marc, Franz", "Zwei Pferde in Landschaft, Tempera",
     "Gemälde", "Tempera", "40 cm x 53 cm", "Fischer", "1939-06-30", "192",
     f"{HD}/fischer1939_06_30"),
    ("X10", "Beckmann, Max", "Stillleben mit Fernrohr",
     "Gemälde", "Öl auf Leinwand", "80 cm x 60 cm", "Fischer", "1939-06-30", "194",
     f"{HD}/fischer1939_06_30"),
    ("X11", "Cranach d. Ä., Lucas", "Bildnis einer sächsischen Prinzessin",
     "Gemälde", "Öl auf Holz", "39 cm x 25 cm", "Hahn (Heinrich)", "1944-05-17", "2", ""),
    ("X12", "Ruisdael, Jacob van", "Waldlandschaft mit Wasserfall",
     "Gemälde", "Öl auf Leinwand", "72 cm x 95 cm", "Hahn (Heinrich)", "1944-05-17", "21", ""),
    ("X13", "Teniers d. J., David", "Bauernstube mit Kartenspielern",
     "Gemälde", "Öl auf Kupfer", "35 cm x 47 cm", "Lange", "1938-11-03", "14",
     f"{HD}/lange1938_11_03"),
    ("X14", "Waldmüller, Ferdinand Georg", "Kinder am Fenster",
     "Gemälde", "Öl auf Holz", "54 cm x 43 cm", "Weinmüller", "1942-07-30", "18",
     f"{HD}/weinmueller1942_07_30"),
    ("X15", "Defregger, Franz von", "Tiroler Bauernmädchen",
     "Gemälde", "Öl auf Leinwand", "44 cm x 36 cm", "Weinmüller", "1942-07-30", "20",
     f"{HD}/weinmueller1942_07_30"),
    ("X16", "Zille, Heinrich", "Hinterhof mit spielenden Kindern, Tusche",
     "Zeichnung", "Tusche", "21 cm x 27 cm", "Graupe", "1935-10-08", "133",
     f"{HD}/graupe1935_10_08"),
    ("X17", "Pechstein, Max", "Fischerboote bei Nidden, Farbholzschnitt",
     "Holzschnitt", "Farbholzschnitt", "40 cm x 32 cm", "Graupe", "1935-10-08", "150",
     f"{HD}/graupe1935_10_08"),
    ("X18", "Kirchner, Ernst Ludwig", "Strassenszene, Pastell",
     "Pastell", "Pastell", "35 cm x 26 cm", "Cassirer", "1936-03-12", "77",
     f"{HD}/cassirer1936_03_12"),
    ("X19", "Macke, August", "Spaziergänger im Park, Aquarell",
     "Aquarell", "Aquarell", "25 cm x 30 cm", "Lange", "1938-11-03", "71",
     f"{HD}/lange1938_11_03"),
    ("X20", "Modersohn-Becker, Paula", "Mädchenkopf vor Birken",
     "Gemälde", "Tempera auf Pappe", "38 cm x 30 cm", "Paffrath", "1938-02-11", "44", ""),
    ("X21", "Hofer, Karl", "Zwei Freundinnen",
     "Gemälde", "Öl auf Leinwand", "81 cm x 65 cm", "Paffrath", "1938-02-11", "47", ""),
    ("X22", "Lenbach, Franz von", "Bildnis des Fürsten Bismarck",
     "Gemälde", "Öl auf Pappe", "60 cm x 49 cm", "Helbing", "1933-06-14", "33",
     f"{HD}/helbing1933_06_14"),
    ("X23", "Stuck, Franz von", "Salome, Studie",
     "Gemälde", "Öl auf Holz", "46 cm x 38 cm", "Helbing", "1933-06-14", "35",
     f"{HD}/helbing1933_06_14"),
    ("X24", "Courbet, Gustave", "Felsige Küste bei Etretat",
     "Gemälde", "Öl auf Leinwand", "54 cm x 65 cm", "Lempertz", "1941-02-19", "15",
     f"{HD}/lempertz1941_02_19"),
    ("X25", "Daumier, Honoré", "Die Schachspieler, Federzeichnung",
     "Zeichnung", "Feder in Tusche", "20 cm x 26 cm", "Boerner", "1937-04-22", "320",
     f"{HD}/boerner1937_04_22"),
    ("X26", "Rodin, Auguste", "Studie einer Tänzerin, Marmor",
     "Plastik", "Marmor", "30 cm hoch", "Berliner Auktionshaus", "1940-09-25", "81", ""),
    ("X27", "Maillol, Aristide", "Kauernde, Bronzeguss",
     "Plastik", "Bronze", "18 cm hoch", "Berliner Auktionshaus", "1940-09-25", "83", ""),
    ("X28", "Schinkel, Karl Friedrich", "Gotische Kirche am Wasser, Sepia",
     "Zeichnung", "Sepia", "28 cm x 38 cm", "Boerner", "1937-04-22", "330",
     f"{HD}/boerner1937_04_22"),
    ("X29", "Grosz, George", "Strassencafé, Aquarell und Tusche",
     "Aquarell", "Aquarell und Tusche", "33 cm x 24 cm", "Graupe", "1935-10-08", "160",
     f"{HD}/graupe1935_10_08"),
]

QUERIES = [
    # Specific (8)
    ("q01", "Were there any paintings by Otto Dix sold at Fischer in 1939?", "Specific",
     {"op": "and", "args": [
         {"op": "contains", "field": "artist", "value": "Dix"},
         {"op": "equals", "field": "auction_house", "value": "Fischer"},
         {"op": "year_equals", "value": 1939},
     ]}, "en", False),
    ("q02", "Charcoal drawings by Max Liebermann that are signed", "Specific",
     {"op": "and", "args": [
         {"op": "contains", "field": "artist", "value": "Liebermann"},
         {"op": "contains", "field": "material", "value": "Kohle"},
     ]}, "en", False),
    ("q03", "Portraits by Rembrandt showing a gold chain (Goldkette)", "Specific",
     {"op": "and", "args": [
         {"op": "contains", "field": "artist", "value": "Rembrandt"},
         {"op": "contains", "field": "title", "value": "Goldkette"},
     ]}, "en", False),
    ("q04", "Radierungen by Albrecht Dürer sold at Boerner", "Specific",
     {"op": "and", "args": [
         {"op": "contains", "field": "artist", "value": "Dürer"},
         {"op": "equals", "field": "auction_house", "value": "Boerner"},
     ]}, "en", False),
    ("q05", "Aquarell works by Emil Nolde sold in 1938", "Specific",
     {"op": "and", "args": [
         {"op": "contains", "field": "artist", "value": "Nolde"},
         {"op": "year_equals", "value": 1938},
     ]}, "en", False),
    ("q06", "Paintings by Caspar David Friedrich at Lempertz", "Specific",
     {"op": "and", "args": [
         {"op": "contains", "field": "artist", "value": "Friedrich, Caspar"},
         {"op": "equals", "field": "auction_house", "value": "Lempertz"},
     ]}, "en", False),
    ("q07", "Bronze sculptures by Ernst Barlach", "Specific",
     {"op": "and", "args": [
         {"op": "contains", "field": "artist", "value": "Barlach"},
         {"op": "contains", "field": "material", "value": "Bronze"},
     ]}, "en", False),
    ("q08", "Lithographie by Käthe Kollwitz sold at Graupe in 1935", "Specific",
     {"op": "and", "args": [
         {"op": "contains", "field": "artist", "value": "Kollwitz"},
         {"op": "year_equals", "value": 1935},
     ]}, "en", False),
    # Vague or Broad (7), keyword-approximated ground truth
    ("q09", "Please retrieve any works that are not paintings and depict motifs of Venedig and are painted in Gouache",
     "VagueOrBroad",
     {"op": "and", "args": [
         {"op": "contains", "field": "title", "value": "Venedig"},
         {"op": "contains", "field": "material", "value": "Gouache"},
     ]}, "en", True),
    ("q10", "a drawing sold at auction attributed to an Italienische artist of the 15. Jahrhundert",
     "VagueOrBroad",
     {"op": "contains", "field": "title", "value": "Italienische Schule"}, "en", True),
    ("q11", "Plastik works sold by the Berliner Auktionshaus authorities in Berlin", "VagueOrBroad",
     {"op": "and", "args": [
         {"op": "equals", "field": "object_type", "value": "Plastik"},
         {"op": "contains", "field": "auction_house", "value": "Berliner"},
     ]}, "en", True),
    ("q12", "Sculptures made of fired clay, Gebrannter Ton", "VagueOrBroad",
     {"op": "contains", "field": "material", "value": "Gebrannter Ton"}, "en", True),
    ("q13", "Damenbildnis portraits of women with mit Hut", "VagueOrBroad",
     {"op": "contains", "field": "title", "value": "mit Hut"}, "en", True),
    ("q14", "Blumenstillleben still lifes with flowers and Rosen", "VagueOrBroad",
     {"op": "contains", "field": "title", "value": "Blumenstillleben"}, "en", True),
    ("q15", "Landscapes with a Blick auf die Alpen", "VagueOrBroad",
     {"op": "contains", "field": "title", "value": "Alpen"}, "en", True),
    # Multilingual (2)
    ("q16", "Картины Otto Dix, проданные на аукционе Fischer в 1939 году", "Multilingual",
     {"op": "and", "args": [
         {"op": "contains", "field": "artist", "value": "Dix"},
         {"op": "equals", "field": "auction_house", "value": "Fischer"},
         {"op": "year_equals", "value": 1939},
     ]}, "ru", False),
    ("q17", "伦勃朗 Rembrandt 的肖像画 Goldkette 金链", "Multilingual",
     {"op": "and", "args": [
         {"op": "contains", "field": "artist", "value": "Rembrandt"},
         {"op": "contains", "field": "title", "value": "Goldkette"},
     ]}, "zh", False),
    # Out of scope (3)
    ("q18", "suspended sharks in tanks exhibited at the Tate", "OutOfScope", None, "en", False),
    ("q19", "a sculpture depicting a balloon dog by Koons", "OutOfScope", None, "en", False),
    ("q20", "recipes for traditional bavarian pretzels with sweet mustard", "OutOfScope", None, "en", False),
]

# Synthetic manual ratings (1-3), committed for the offline suite.
RATINGS = {
    "q01": 3, "q02": 3, "q03": 3, "q04": 3, "q05": 3, "q06": 3, "q07": 3, "q08": 3,
    "q09": 2, "q10": 2, "q11": 2, "q12": 3, "q13": 2, "q14": 3, "q15": 2,
    "q16": 3, "q17": 3,
    "q18": 3, "q19": 3, "q20": 2,
}


def main():
    FIXTURES.mkdir(exist_ok=True)
    with open(FIXTURES / "corpus_50.csv", "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(CSV_HEADER)
        for rid, artist, title, otype, material, dims, house, date, cat, url in RECORDS:
            writer.writerow([rid, artist, title, otype, material, dims, house, date, cat, url])
    assert len(RECORDS) == 50, len(RECORDS)

    with open(FIXTURES / "queries_20.jsonl", "w", encoding="utf-8") as f:
        for qid, text, category, pred, lang, approx in QUERIES:
            obj = {"query_id": qid, "text": text, "category": category,
                   "ground_truth": pred, "language_tag": lang, "approximate": approx}
            f.write(json.dumps(obj, ensure_ascii=False) + "\n")

    with open(FIXTURES / "ratings.csv", "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["query_id", "rating"])
        for qid, rating in sorted(RATINGS.items()):
            writer.writerow([qid, rating])

    corpus, _ = parse_records((FIXTURES / "corpus_50.csv").read_bytes(), "csv")
    dix = corpus.get("D1")
    (FIXTURES / "golden_dix.txt").write_text(augment(dix).text, encoding="utf-8")
    print(f"wrote fixtures for {len(corpus)} records and {len(QUERIES)} queries")


if __name__ == "__main__":
    main()
