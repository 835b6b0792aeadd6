public class Plain {
    private static final Logger log = LogManager.getLogger(Plain.class);

    public int twice(int x) {
        log.info("twice {}", x);
        return x * 2;
    }
}
