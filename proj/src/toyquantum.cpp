namespace flux::detail {
int placeholder_toyquantum = 0;
}
