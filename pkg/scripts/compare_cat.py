"""Same comparison as compare_baker.py for a period-3 orbit of the cat map."""
from compare_baker import compare

if __name__ == "__main__":
    compare("cat_scar.cfg", __doc__)
